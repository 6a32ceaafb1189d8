#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "stdiff/group/rational_point.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/process/process_cache.hpp"

namespace stdiff::generic {

using group::RationalPoint;
using group::TorusPoint;

/// Continuous bump around 0: 1 on B(0, delta/2), 2 - (2/delta) rho(x, 0) on
/// the annulus, 0 outside B(0, delta). Lipschitz with constant 2/delta.
class TentFunction {
 public:
  explicit TentFunction(mpq_class delta);

  const mpq_class& delta() const { return delta_; }
  double lipschitz() const { return 2.0 / delta_.get_d(); }

  mpq_class at_distance(const mpq_class& r) const;
  double operator()(const TorusPoint& x) const;
  mpq_class operator()(const RationalPoint& x) const;

 private:
  mpq_class delta_;
};

/// Largest delta = j / 2^bits <= 1/2 with (2 delta)^d / d! < eps.
mpq_class small_ball_delta(std::size_t dim, const mpq_class& eps, unsigned dyadic_bits = 8);

/// Exact Haar integral of the tent, from the l1-ball volume profile:
/// vol(delta/2) + int_{delta/2}^{delta} (2 - 2t/delta) dvol(t).
mpq_class tent_integral(const mpq_class& delta, std::size_t dim);

/// Exact time averages (1/H) sum_{j<H} f(Phi_j x) of the tent along the orbit
/// of a rational point, for each horizon H in `horizons` (ascending order not
/// required).
std::vector<mpq_class> exact_tent_averages(process::ProcessCache& cache, const RationalPoint& x,
                                           const TentFunction& f, const std::vector<std::size_t>& horizons);

/// Largest possible change of a k-average when the values at the flagged
/// indices are replaced: (1/k) sum_{i<k} chi_I(i) * oscillation.
mpq_class average_change_bound(const std::vector<bool>& changed, std::size_t k, const mpq_class& oscillation);

}  // namespace stdiff::generic
