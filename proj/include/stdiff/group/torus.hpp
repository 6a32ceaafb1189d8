#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "stdiff/group/int_matrix.hpp"
#include "stdiff/rng.hpp"

namespace stdiff::group {

inline constexpr unsigned kMinPrecisionBits = 64;

/// Point of R^d / Z^d in fixed point: coordinate j is raw(j) / 2^B with
/// 0 <= raw(j) < 2^B. Reduction mod 1 is exact; all coordinates share B.
class TorusPoint {
 public:
  TorusPoint() = default;
  /// The identity element 0 at precision `bits` (>= 64).
  TorusPoint(std::size_t dim, unsigned bits);

  /// Takes arbitrary integers and reduces them mod 2^bits.
  static TorusPoint from_raw(unsigned bits, std::vector<mpz_class> raw);
  /// Rounds each rational down onto the 2^-bits grid, then reduces mod 1.
  static TorusPoint from_rationals(unsigned bits, std::span<const mpq_class> coords);
  static TorusPoint from_doubles(unsigned bits, std::span<const double> coords);

  std::size_t dim() const { return raw_.size(); }
  unsigned bits() const { return bits_; }
  const mpz_class& raw(std::size_t j) const { return raw_[j]; }
  const std::vector<mpz_class>& raw() const { return raw_; }

  double coord(std::size_t j) const;
  mpq_class exact(std::size_t j) const;
  std::vector<double> coords() const;

  TorusPoint operator+(const TorusPoint& rhs) const;
  TorusPoint operator-(const TorusPoint& rhs) const;
  TorusPoint operator-() const;
  bool operator==(const TorusPoint& rhs) const = default;

 private:
  friend void apply_into(const IntMatrix& a, const TorusPoint& x, TorusPoint& out);

  unsigned bits_ = kMinPrecisionBits;
  std::vector<mpz_class> raw_;
};

/// Signed displacement u with coordinates steps(j) / 2^B, small enough that
/// the real vector and its image on the torus agree.
struct BallOffset {
  unsigned bits = kMinPrecisionBits;
  std::vector<mpz_class> steps;

  TorusPoint as_point() const;
  /// sum_j |u_j| as an exact rational.
  mpq_class l1_norm() const;
  std::vector<double> coords() const;
};

/// rho(x, y) = sum_j min_h |t_j - s_j + h|, exactly.
mpq_class rho(const TorusPoint& x, const TorusPoint& y);
/// Same value rounded once to double.
double rho_double(const TorusPoint& x, const TorusPoint& y);
/// rho(x, 0) as the integer numerator over 2^B.
mpz_class rho_to_zero_raw(const TorusPoint& x);

/// x -> A x mod Z^d, exact in fixed point.
TorusPoint apply(const IntMatrix& a, const TorusPoint& x);
/// In-place variant reusing `out`'s storage; `out` must not alias `x`.
void apply_into(const IntMatrix& a, const TorusPoint& x, TorusPoint& out);

/// Haar measure on the 2^-B grid: every coordinate uniform on {j / 2^B}.
TorusPoint haar_sample(SeededStream& rng, std::size_t dim, unsigned bits);

/// Offset uniform on the rho-ball {u : rho(0, u) < r} by rejection from the
/// bounding box [-min(r,1/2), min(r,1/2)]^d on the 2^-B grid.
/// Throws degenerate_radius (precision_exhausted flavour) if r < 2^-B.
BallOffset ball_offset_sample(SeededStream& rng, std::size_t dim, const mpq_class& r, unsigned bits);

/// Haar measure of B(0, r) = (2r)^d / d! for 0 < r <= 1/2.
mpq_class ball_volume(std::size_t dim, const mpq_class& r);

/// Converts a nonnegative integer numerator over 2^bits to double without
/// overflow for large bits.
double scaled_to_double(const mpz_class& numerator, unsigned bits);

}  // namespace stdiff::group
