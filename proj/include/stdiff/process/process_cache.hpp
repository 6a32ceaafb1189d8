#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "stdiff/group/int_matrix.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/process/rule.hpp"

namespace stdiff::process {

using group::TorusPoint;

/// Lazily extended cumulative products Phi_n = T_n ... T_1 (Phi_0 = I) with
/// exact determinants and l1 Lipschitz data.
///
/// extend_to() is the single writer. Const accessors only read prefixes that
/// were materialized earlier, so they are safe to call from worker threads
/// once the caller has extended far enough.
class ProcessCache {
 public:
  explicit ProcessCache(GeneratorRule rule);

  const GeneratorRule& rule() const { return rule_; }
  std::size_t dim() const { return rule_.dim(); }

  /// Materializes T_1..T_n and Phi_0..Phi_n. Checks
  /// det Phi_n == det T_n * det Phi_{n-1} on every step.
  void extend_to(std::size_t n);
  std::size_t materialized() const { return phis_.size() - 1; }

  /// Memoized Phi_n; extends as needed.
  const IntMatrix& phi(std::size_t n);
  const IntMatrix& phi_at(std::size_t n) const;
  const IntMatrix& generator_at(std::size_t n) const;
  const mpz_class& det_phi_at(std::size_t n) const;
  const mpz_class& det_generator_at(std::size_t n) const;
  /// L_n = ||T_n||_col.
  const mpz_class& lipschitz_at(std::size_t n) const;

  /// max{1, L_1, ..., L_{k-1}}.
  mpz_class ltilde(std::size_t k);

  /// tau(s, t) = T_s ... T_{t+1} for s >= t, computed as a product of
  /// generators (never via inverses).
  IntMatrix tau(std::size_t s, std::size_t t);

  /// sum_{n <= k} ceil(log2 L_n): bits an orbit loses to carries by step k.
  unsigned horizon_bits(std::size_t k);
  unsigned horizon_bits_at(std::size_t k) const;
  /// Default fixed-point precision for orbits of length k: horizon_bits(k-1)
  /// plus a 64-bit guard, rounded up to a multiple of 64.
  unsigned required_bits(std::size_t orbit_length, unsigned extra = 0);
  /// Throws PrecisionExhausted unless horizon_bits(orbit_length - 1) <= bits.
  void check_precision(std::size_t orbit_length, unsigned bits);
  void check_precision_at(std::size_t orbit_length, unsigned bits) const;

  /// Applies T_n to x in place (n >= 1). Requires n <= materialized().
  void step(std::size_t n, TorusPoint& x, TorusPoint& scratch) const;
  /// Phi_0 x, ..., Phi_{k-1} x.
  std::vector<TorusPoint> orbit(const TorusPoint& x, std::size_t k);

 private:
  GeneratorRule rule_;
  std::vector<IntMatrix> gens_;     // gens_[0] unused
  std::vector<IntMatrix> phis_;     // phis_[0] = I
  std::vector<mpz_class> det_gen_;  // det_gen_[0] = 1
  std::vector<mpz_class> dets_;
  std::vector<mpz_class> lips_;     // lips_[0] unused
  std::vector<unsigned> bits_prefix_;  // bits_prefix_[n] = sum_{i<=n} ceil(log2 L_i)
};

}  // namespace stdiff::process
