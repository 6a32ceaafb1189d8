#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stdiff/group/int_matrix.hpp"
#include "stdiff/group/torus.hpp"

namespace stdiff::group {

/// Torus point with rational coordinates over a common denominator:
/// coordinate j is num(j) / den with 0 <= num(j) < den. Used where orbits must
/// be replayed exactly (kernel points, witness centers).
class RationalPoint {
 public:
  RationalPoint() = default;
  RationalPoint(std::size_t dim, mpz_class den);
  static RationalPoint from_rationals(const std::vector<mpq_class>& coords);
  static RationalPoint from_torus(const TorusPoint& x);

  std::size_t dim() const { return num_.size(); }
  const mpz_class& den() const { return den_; }
  const mpz_class& num(std::size_t j) const { return num_[j]; }
  mpq_class coord(std::size_t j) const;
  std::vector<mpq_class> coords() const;
  bool is_zero() const;

  RationalPoint operator+(const RationalPoint& rhs) const;
  RationalPoint operator-(const RationalPoint& rhs) const;
  /// Equality as torus points (denominators may differ).
  bool operator==(const RationalPoint& rhs) const;

  /// A x mod Z^d; the denominator never grows.
  RationalPoint apply(const IntMatrix& a) const;
  void apply_in_place(const IntMatrix& a);

  /// rho(x, 0) numerator over den().
  mpz_class rho_to_zero_num() const;
  mpq_class rho_to_zero() const;

  /// Exact coordinates as "num/den" strings.
  std::vector<std::string> to_strings() const;
  static RationalPoint from_strings(const std::vector<std::string>& coords);

 private:
  void normalize();

  mpz_class den_ = 1;
  std::vector<mpz_class> num_;
};

mpq_class rho(const RationalPoint& x, const RationalPoint& y);

}  // namespace stdiff::group
