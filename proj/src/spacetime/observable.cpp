#include "stdiff/spacetime/observable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stdiff/error.hpp"
#include "stdiff/format.hpp"

namespace stdiff::spacetime {

Observable Observable::character(weyl::Character chr) {
  Observable f;
  f.kind_ = ObservableKind::character;
  f.dim_ = chr.dim();
  f.label_ = "char:" + chr.label();
  std::replace(f.label_.begin(), f.label_.end(), ';', ',');
  f.lipschitz_ = 2.0 * std::numbers::pi * chr.l1().get_d();
  f.chr_ = std::move(chr);
  return f;
}

Observable Observable::tent(std::size_t dim, const mpq_class& delta) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "dimension must be positive");
  Observable f;
  f.kind_ = ObservableKind::tent;
  f.dim_ = dim;
  f.tent_ = generic::TentFunction(delta);
  f.label_ = "tent:" + f.tent_.delta().get_str() + (dim > 1 ? "@" + std::to_string(dim) : "");
  f.lipschitz_ = f.tent_.lipschitz();
  return f;
}

Observable Observable::table(std::vector<mpq_class> values) {
  if (values.empty()) throw Error(Errc::invalid_config, "observable table is empty");
  Observable f;
  f.kind_ = ObservableKind::custom_lipschitz;
  f.dim_ = 1;
  f.label_ = values.size() == 1 ? "const:" : "table:";
  const double n = static_cast<double>(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    values[j].canonicalize();
    f.label_ += (j ? "," : "") + values[j].get_str();
    f.table_d_.push_back(values[j].get_d());
    const mpq_class& next = values[(j + 1) % values.size()];
    f.lipschitz_ = std::max(f.lipschitz_, std::abs(mpq_class(next - values[j]).get_d()) * n);
  }
  f.table_ = std::move(values);
  return f;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

Observable Observable::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(Errc::invalid_config, "observable spec needs kind:args, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (kind == "char") {
      std::vector<mpz_class> m;
      for (const auto& part : split(args, ',')) m.emplace_back(part);
      return character(weyl::Character(std::move(m)));
    }
    if (kind == "tent") {
      const auto at = args.find('@');
      const std::size_t dim = at == std::string::npos ? 1 : std::stoul(args.substr(at + 1));
      return tent(dim, parse_rational(args.substr(0, at)));
    }
    if (kind == "const") return constant(parse_rational(args));
    if (kind == "table") {
      std::vector<mpq_class> values;
      for (const auto& part : split(args, ',')) values.push_back(parse_rational(part));
      return table(std::move(values));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::invalid_config, "bad observable '" + spec + "': " + e.what());
  }
  throw Error(Errc::invalid_config, "unknown observable kind '" + kind + "'");
}

std::complex<double> Observable::operator()(const TorusPoint& x) const {
  if (x.dim() != dim_) throw Error(Errc::dimension_mismatch, "observable and point dimensions differ");
  switch (kind_) {
    case ObservableKind::character: return chr_(x);
    case ObservableKind::tent: return tent_(x);
    case ObservableKind::custom_lipschitz: {
      if (table_d_.size() == 1) return table_d_[0];
      const double n = static_cast<double>(table_d_.size());
      const double t = x.coord(0) * n;
      const double base = std::floor(t);
      const double frac = t - base;
      const std::size_t j = std::min(static_cast<std::size_t>(base), table_d_.size() - 1);
      const double a = table_d_[j];
      const double b = table_d_[(j + 1) % table_d_.size()];
      return a + frac * (b - a);
    }
  }
  return 0.0;
}

double Observable::modulus(double t) const { return lipschitz_ * t; }

mpq_class Observable::integral() const {
  switch (kind_) {
    case ObservableKind::character: return 0;
    case ObservableKind::tent: return generic::tent_integral(tent_.delta(), dim_);
    case ObservableKind::custom_lipschitz: {
      mpq_class sum = 0;
      for (const auto& v : table_) sum += v;
      sum /= static_cast<unsigned long>(table_.size());
      return sum;
    }
  }
  return 0;
}

double Observable::sup_norm() const {
  if (kind_ != ObservableKind::custom_lipschitz) return 1.0;
  double best = 0.0;
  for (double v : table_d_) best = std::max(best, std::abs(v));
  return best;
}

std::vector<std::vector<std::complex<double>>> ergodic_time_averages(ProcessCache& cache, const TorusPoint& x,
                                                                     const std::vector<Observable>& fs,
                                                                     const std::vector<std::size_t>& ks) {
  std::vector<std::vector<std::complex<double>>> out(fs.size(), std::vector<std::complex<double>>(ks.size()));
  if (ks.empty()) return out;
  const std::size_t kmax = *std::max_element(ks.begin(), ks.end());
  if (*std::min_element(ks.begin(), ks.end()) == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  cache.extend_to(kmax - 1);
  cache.check_precision(kmax, x.bits());
  std::vector<std::complex<double>> sums(fs.size());
  TorusPoint cur = x, scratch(x.dim(), x.bits());
  for (std::size_t i = 0; i < kmax; ++i) {
    if (i > 0) cache.step(i, cur, scratch);
    for (std::size_t o = 0; o < fs.size(); ++o) sums[o] += fs[o](cur);
    for (std::size_t q = 0; q < ks.size(); ++q)
      if (ks[q] == i + 1)
        for (std::size_t o = 0; o < fs.size(); ++o) out[o][q] = sums[o] / static_cast<double>(i + 1);
  }
  return out;
}

std::complex<double> ergodic_time_average(ProcessCache& cache, const TorusPoint& x, const Observable& f,
                                          std::size_t k) {
  return ergodic_time_averages(cache, x, {f}, {k})[0][0];
}

}  // namespace stdiff::spacetime
