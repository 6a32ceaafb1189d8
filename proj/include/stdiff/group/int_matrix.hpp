#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace stdiff::group {

/// Square matrix of arbitrary-precision integers.
///
/// Represents the toral endomorphism x -> A x mod Z^d. All arithmetic is exact.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  explicit IntMatrix(const std::vector<std::vector<mpz_class>>& rows);

  static IntMatrix identity(std::size_t dim);
  static IntMatrix scalar(std::size_t dim, const mpz_class& value);

  std::size_t dim() const { return dim_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  IntMatrix transpose() const;

  /// Fraction-free (Bareiss) determinant with row pivoting.
  mpz_class det() const;

  /// Induced l1 operator norm max_j sum_i |a_ij|; the Lipschitz constant of
  /// x -> Ax with respect to the torus metric rho.
  mpz_class col_norm() const;

  bool commutes_with(const IntMatrix& rhs) const { return (*this) * rhs == rhs * (*this); }

  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<mpz_class> data_;
};

using IntegerEndomorphism = IntMatrix;

/// ceil(log2 n) for n >= 1, and 0 for n <= 1.
unsigned ceil_log2(const mpz_class& n);

}  // namespace stdiff::group
