#include "stdiff/group/finite_group.hpp"

#include <numeric>
#include <sstream>

#include "stdiff/error.hpp"

namespace stdiff::group {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw Error(Errc::invalid_config, "finite group needs at least one cyclic factor");
  for (auto q : orders_) {
    if (q < 2) throw Error(Errc::invalid_config, "cyclic orders must be >= 2");
    if (size_ > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(q))
      throw Error(Errc::search_budget, "finite group too large");
    size_ *= static_cast<std::uint64_t>(q);
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(const std::string& spec) {
  std::vector<std::int64_t> orders;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t pos = 0;
    if (token[0] == 'Z' || token[0] == 'z') pos = 1;
    try {
      orders.push_back(std::stoll(token.substr(pos)));
    } catch (const std::exception&) {
      throw Error(Errc::invalid_config, "cannot parse finite group '" + spec + "'");
    }
    token.clear();
  };
  for (char c : spec) {
    if (c == 'x' || c == ',' || c == '+' || c == ' ') flush();
    else token.push_back(c);
  }
  flush();
  return FiniteAbelianGroup(std::move(orders));
}

Residues FiniteAbelianGroup::element(std::uint64_t index) const {
  Residues x(orders_.size());
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    const auto q = static_cast<std::uint64_t>(orders_[j]);
    x[j] = static_cast<std::int64_t>(index % q);
    index /= q;
  }
  return x;
}

std::uint64_t FiniteAbelianGroup::index_of(const Residues& x) const {
  std::uint64_t idx = 0;
  for (std::size_t j = orders_.size(); j-- > 0;) idx = idx * static_cast<std::uint64_t>(orders_[j]) + static_cast<std::uint64_t>(x[j]);
  return idx;
}

Residues FiniteAbelianGroup::add(const Residues& x, const Residues& y) const {
  Residues z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = mod(x[j] + y[j], orders_[j]);
  return z;
}

Residues FiniteAbelianGroup::sub(const Residues& x, const Residues& y) const {
  Residues z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = mod(x[j] - y[j], orders_[j]);
  return z;
}

Residues FiniteAbelianGroup::scale(std::int64_t k, const Residues& x) const {
  Residues z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = mod(mod(k, orders_[j]) * x[j], orders_[j]);
  return z;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < orders_.size(); ++j) os << (j ? "xZ" : "Z") << orders_[j];
  return os.str();
}

Residues FiniteEndomorphism::operator()(const FiniteAbelianGroup& g, const Residues& x) const {
  Residues acc = g.zero();
  for (std::size_t j = 0; j < images_.size(); ++j) acc = g.add(acc, g.scale(x[j], images_[j]));
  return acc;
}

FiniteEndomorphism FiniteEndomorphism::compose(const FiniteAbelianGroup& g, const FiniteEndomorphism& rhs) const {
  std::vector<Residues> out;
  out.reserve(rhs.images_.size());
  for (const auto& img : rhs.images_) out.push_back((*this)(g, img));
  return FiniteEndomorphism(std::move(out));
}

FiniteEndomorphism FiniteEndomorphism::minus(const FiniteAbelianGroup& g, const FiniteEndomorphism& rhs) const {
  std::vector<Residues> out(images_.size());
  for (std::size_t j = 0; j < images_.size(); ++j) out[j] = g.sub(images_[j], rhs.images_[j]);
  return FiniteEndomorphism(std::move(out));
}

bool FiniteEndomorphism::is_surjective(const FiniteAbelianGroup& g) const {
  std::vector<bool> hit(g.size(), false);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    const auto idx = g.index_of((*this)(g, g.element(i)));
    if (!hit[idx]) {
      hit[idx] = true;
      ++count;
    }
  }
  return count == g.size();
}

namespace {

std::vector<Residues> admissible_images(const FiniteAbelianGroup& g, std::int64_t order) {
  std::vector<Residues> out;
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    Residues h = g.element(i);
    if (g.scale(order, h) == g.zero()) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

std::uint64_t count_endomorphisms(const FiniteAbelianGroup& g) {
  std::uint64_t total = 1;
  for (auto q : g.orders()) {
    // #{h in A : q h = 0} = prod_i gcd(q, q_i)
    std::uint64_t n = 1;
    for (auto qi : g.orders()) n *= static_cast<std::uint64_t>(std::gcd(q, qi));
    if (total > (std::uint64_t{1} << 62) / n) return std::uint64_t{1} << 62;
    total *= n;
  }
  return total;
}

std::vector<FiniteEndomorphism> enumerate_endomorphisms(const FiniteAbelianGroup& g, std::uint64_t cap) {
  const std::uint64_t total = count_endomorphisms(g);
  if (total > cap)
    throw Error(Errc::search_budget, "|End(" + g.to_string() + ")| = " + std::to_string(total) +
                                         " exceeds the limit " + std::to_string(cap));
  std::vector<std::vector<Residues>> choices;
  for (auto q : g.orders()) choices.push_back(admissible_images(g, q));
  std::vector<FiniteEndomorphism> out;
  out.reserve(total);
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<Residues> images;
    for (std::size_t j = 0; j < choices.size(); ++j) images.push_back(choices[j][pick[j]]);
    out.emplace_back(std::move(images));
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == choices[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  return out;
}

}  // namespace stdiff::group
