#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stdiff/group/int_matrix.hpp"
#include "stdiff/group/torus.hpp"

namespace stdiff::weyl {

using group::TorusPoint;

/// gamma_m(x) = exp(2 pi i m.x) for a nonzero integer frequency m.
class Character {
 public:
  Character() = default;
  explicit Character(std::vector<mpz_class> freq);
  Character(std::initializer_list<long> freq);

  std::size_t dim() const { return freq_.size(); }
  const std::vector<mpz_class>& freq() const { return freq_; }

  /// m.x mod 1 as a numerator over 2^B, computed exactly.
  mpz_class phase_raw(const TorusPoint& x) const;
  /// The phase rounded once to double, in [0, 1).
  double phase(const TorusPoint& x) const;
  std::complex<double> operator()(const TorusPoint& x) const;

  /// gamma o A has frequency A^T m.
  Character pullback(const group::IntMatrix& a) const;

  /// sum_j |m_j|.
  mpz_class l1() const;
  /// "m1;m2;..." used in CSV output.
  std::string label() const;

  bool operator==(const Character&) const = default;

 private:
  std::vector<mpz_class> freq_;
};

/// exp(2 pi i t) for t in [0, 1).
std::complex<double> unit_circle(double t);

/// All m with 0 < ||m||_inf <= bound.
std::vector<Character> character_box(std::size_t dim, long bound);

}  // namespace stdiff::weyl
