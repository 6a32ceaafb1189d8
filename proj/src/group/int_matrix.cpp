#include "stdiff/group/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "stdiff/error.hpp"

namespace stdiff::group {

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : IntMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(Errc::dimension_mismatch, "matrix rows must be square");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

IntMatrix::IntMatrix(const std::vector<std::vector<mpz_class>>& rows) : IntMatrix(rows.size()) {
  for (std::size_t r = 0; r < dim_; ++r) {
    if (rows[r].size() != dim_) throw Error(Errc::dimension_mismatch, "matrix rows must be square");
    for (std::size_t c = 0; c < dim_; ++c) (*this)(r, c) = rows[r][c];
  }
}

IntMatrix IntMatrix::identity(std::size_t dim) { return scalar(dim, 1); }

IntMatrix IntMatrix::scalar(std::size_t dim, const mpz_class& value) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = value;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "matrix product");
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "matrix difference");
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw Error(Errc::dimension_mismatch, "matrix sum");
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

mpz_class IntMatrix::det() const {
  if (dim_ == 0) return 1;
  if (dim_ == 1) return data_[0];
  std::vector<mpz_class> m = data_;
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return m[r * dim_ + c]; };
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < dim_; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < dim_ && at(p, k) == 0) ++p;
      if (p == dim_) return 0;
      for (std::size_t c = 0; c < dim_; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < dim_; ++i) {
      for (std::size_t j = k + 1; j < dim_; ++j) {
        mpz_class v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
    }
    prev = at(k, k);
  }
  mpz_class d = at(dim_ - 1, dim_ - 1);
  return sign > 0 ? d : mpz_class(-d);
}

mpz_class IntMatrix::col_norm() const {
  mpz_class best = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < dim_; ++i) s += abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

unsigned ceil_log2(const mpz_class& n) {
  if (n <= 1) return 0;
  mpz_class m = n - 1;
  return static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

}  // namespace stdiff::group
