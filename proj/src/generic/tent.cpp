#include "stdiff/generic/tent.hpp"

#include <algorithm>

#include "stdiff/error.hpp"

namespace stdiff::generic {

TentFunction::TentFunction(mpq_class delta) : delta_(std::move(delta)) {
  delta_.canonicalize();
  if (delta_ <= 0 || delta_ >= mpq_class(1, 2)) throw Error(Errc::out_of_range, "tent width must lie in (0, 1/2)");
}

mpq_class TentFunction::at_distance(const mpq_class& r) const {
  if (r <= delta_ / 2) return 1;
  if (r >= delta_) return 0;
  return 2 - 2 * r / delta_;
}

double TentFunction::operator()(const TorusPoint& x) const {
  const mpz_class r = group::rho_to_zero_raw(x);
  // compare r / 2^B with delta/2 and delta exactly
  mpz_class scaled_num = delta_.get_num();
  mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), x.bits());
  const mpz_class lhs = r * delta_.get_den();
  if (2 * lhs <= scaled_num) return 1.0;
  if (lhs >= scaled_num) return 0.0;
  return 2.0 - 2.0 * group::scaled_to_double(r, x.bits()) / delta_.get_d();
}

mpq_class TentFunction::operator()(const RationalPoint& x) const { return at_distance(x.rho_to_zero()); }

mpq_class small_ball_delta(std::size_t dim, const mpq_class& eps, unsigned dyadic_bits) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "dimension must be positive");
  if (eps <= 0 || eps > 1) throw Error(Errc::out_of_range, "small_ball_delta needs 0 < eps <= 1");
  for (unsigned bits = std::max(2u, dyadic_bits);; bits += 8) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    auto fits = [&](const mpz_class& j) { return group::ball_volume(dim, mpq_class(j, scale)) < eps; };
    // j ranges over [1, 2^(bits-1)], i.e. delta <= 1/2
    mpz_class lo = 0, hi = scale / 2;
    if (fits(hi)) return mpq_class(hi, scale);
    while (hi - lo > 1) {
      const mpz_class mid = (lo + hi) / 2;
      if (fits(mid)) lo = mid;
      else hi = mid;
    }
    if (lo > 0) {
      mpq_class out(lo, scale);
      out.canonicalize();
      return out;
    }
  }
}

mpq_class tent_integral(const mpq_class& delta, std::size_t dim) {
  if (delta <= 0 || delta >= mpq_class(1, 2)) throw Error(Errc::out_of_range, "tent width must lie in (0, 1/2)");
  if (dim == 0) throw Error(Errc::dimension_mismatch, "dimension must be positive");
  const mpq_class half = delta / 2;
  auto pow = [](const mpq_class& base, std::size_t e) {
    mpq_class r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
  };
  mpz_class fact_dm1 = 1;
  for (std::size_t i = 2; i < dim; ++i) fact_dm1 *= static_cast<unsigned long>(i);
  mpz_class two_d;
  mpz_ui_pow_ui(two_d.get_mpz_t(), 2, dim);
  // dvol(t) = 2^d t^{d-1} / (d-1)! dt
  auto antiderivative = [&](const mpq_class& t) -> mpq_class {
    return 2 * pow(t, dim) / static_cast<unsigned long>(dim) -
           (2 / delta) * pow(t, dim + 1) / static_cast<unsigned long>(dim + 1);
  };
  const mpq_class annulus = mpq_class(two_d, fact_dm1) * (antiderivative(delta) - antiderivative(half));
  mpq_class total = group::ball_volume(dim, half) + annulus;
  total.canonicalize();
  return total;
}

std::vector<mpq_class> exact_tent_averages(process::ProcessCache& cache, const RationalPoint& x,
                                           const TentFunction& f, const std::vector<std::size_t>& horizons) {
  if (horizons.empty()) return {};
  const std::size_t hmax = *std::max_element(horizons.begin(), horizons.end());
  if (*std::min_element(horizons.begin(), horizons.end()) == 0)
    throw Error(Errc::out_of_range, "horizons must be >= 1");
  cache.extend_to(hmax > 0 ? hmax - 1 : 0);

  const mpz_class& dnum = f.delta().get_num();
  const mpz_class& dden = f.delta().get_den();
  // Running state: counts of full-height and annulus terms and the sum of
  // annulus distances (numerators over den).
  std::vector<std::size_t> order(horizons.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return horizons[a] < horizons[b]; });

  std::vector<mpq_class> out(horizons.size());
  RationalPoint cur = x;
  const mpz_class den = cur.den();
  const mpz_class inner = dnum * den;  // r <= delta   <=>  r_num * dden <= dnum * den
  std::size_t ones = 0, mids = 0;
  mpz_class mid_sum = 0;
  std::size_t next = 0;
  for (std::size_t j = 0; j < hmax; ++j) {
    if (j > 0) cur.apply_in_place(cache.generator_at(j));
    const mpz_class r = cur.rho_to_zero_num();
    const mpz_class lhs = r * dden;
    if (2 * lhs <= inner) {
      ++ones;
    } else if (lhs < inner) {
      ++mids;
      mid_sum += r;
    }
    while (next < order.size() && horizons[order[next]] == j + 1) {
      mpq_class total = mpq_class(static_cast<unsigned long>(ones + 2 * mids)) -
                        (2 / f.delta()) * mpq_class(mid_sum, den);
      total /= static_cast<unsigned long>(j + 1);
      total.canonicalize();
      out[order[next]] = total;
      ++next;
    }
  }
  return out;
}

mpq_class average_change_bound(const std::vector<bool>& changed, std::size_t k, const mpq_class& oscillation) {
  if (k == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  unsigned long count = 0;
  for (std::size_t i = 0; i < k && i < changed.size(); ++i) count += changed[i] ? 1 : 0;
  mpq_class out = oscillation * count / static_cast<unsigned long>(k);
  out.canonicalize();
  return out;
}

}  // namespace stdiff::generic
