#include "stdiff/group/rational_point.hpp"

#include <utility>

#include "stdiff/error.hpp"

namespace stdiff::group {

RationalPoint::RationalPoint(std::size_t dim, mpz_class den) : den_(std::move(den)), num_(dim) {
  if (den_ <= 0) throw Error(Errc::out_of_range, "denominator must be positive");
}

RationalPoint RationalPoint::from_rationals(const std::vector<mpq_class>& coords) {
  mpz_class den = 1;
  for (const auto& q : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  RationalPoint p(coords.size(), den);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    p.num_[j] = coords[j].get_num() * (den / coords[j].get_den());
    mpz_fdiv_r(p.num_[j].get_mpz_t(), p.num_[j].get_mpz_t(), den.get_mpz_t());
  }
  p.normalize();
  return p;
}

RationalPoint RationalPoint::from_torus(const TorusPoint& x) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, x.bits());
  RationalPoint p(x.dim(), den);
  for (std::size_t j = 0; j < x.dim(); ++j) p.num_[j] = x.raw(j);
  return p;
}

mpq_class RationalPoint::coord(std::size_t j) const {
  mpq_class q(num_[j], den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> RationalPoint::coords() const {
  std::vector<mpq_class> out(dim());
  for (std::size_t j = 0; j < dim(); ++j) out[j] = coord(j);
  return out;
}

bool RationalPoint::is_zero() const {
  for (const auto& n : num_)
    if (n != 0) return false;
  return true;
}

void RationalPoint::normalize() {
  mpz_class g = den_;
  for (const auto& n : num_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  if (g > 1) {
    den_ /= g;
    for (auto& n : num_) n /= g;
  }
}

RationalPoint RationalPoint::operator+(const RationalPoint& rhs) const {
  if (dim() != rhs.dim()) throw Error(Errc::dimension_mismatch, "rational points of different dimension");
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), den_.get_mpz_t(), rhs.den_.get_mpz_t());
  RationalPoint out(dim(), den);
  const mpz_class a = den / den_;
  const mpz_class b = den / rhs.den_;
  for (std::size_t j = 0; j < dim(); ++j) {
    out.num_[j] = num_[j] * a + rhs.num_[j] * b;
    mpz_fdiv_r(out.num_[j].get_mpz_t(), out.num_[j].get_mpz_t(), den.get_mpz_t());
  }
  out.normalize();
  return out;
}

RationalPoint RationalPoint::operator-(const RationalPoint& rhs) const {
  RationalPoint neg = rhs;
  for (auto& n : neg.num_) {
    n = -n;
    mpz_fdiv_r(n.get_mpz_t(), n.get_mpz_t(), neg.den_.get_mpz_t());
  }
  return *this + neg;
}

bool RationalPoint::operator==(const RationalPoint& rhs) const { return (*this - rhs).is_zero(); }

void RationalPoint::apply_in_place(const IntMatrix& a) {
  if (a.dim() != dim()) throw Error(Errc::dimension_mismatch, "endomorphism and point dimensions differ");
  if (dim() == 1) {
    num_[0] *= a(0, 0);
    mpz_fdiv_r(num_[0].get_mpz_t(), num_[0].get_mpz_t(), den_.get_mpz_t());
    return;
  }
  std::vector<mpz_class> next(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j)
      mpz_addmul(next[i].get_mpz_t(), a(i, j).get_mpz_t(), num_[j].get_mpz_t());
    mpz_fdiv_r(next[i].get_mpz_t(), next[i].get_mpz_t(), den_.get_mpz_t());
  }
  num_ = std::move(next);
}

RationalPoint RationalPoint::apply(const IntMatrix& a) const {
  RationalPoint out = *this;
  out.apply_in_place(a);
  return out;
}

mpz_class RationalPoint::rho_to_zero_num() const {
  mpz_class s = 0;
  for (const auto& n : num_) {
    const mpz_class other = den_ - n;
    s += n < other ? n : other;
  }
  return s;
}

mpq_class RationalPoint::rho_to_zero() const {
  mpq_class q(rho_to_zero_num(), den_);
  q.canonicalize();
  return q;
}

std::vector<std::string> RationalPoint::to_strings() const {
  std::vector<std::string> out;
  for (const auto& q : coords()) out.push_back(q.get_str());
  return out;
}

RationalPoint RationalPoint::from_strings(const std::vector<std::string>& coords) {
  std::vector<mpq_class> q(coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (q[j].set_str(coords[j], 10) != 0) throw Error(Errc::invalid_config, "bad rational '" + coords[j] + "'");
    q[j].canonicalize();
  }
  return from_rationals(q);
}

mpq_class rho(const RationalPoint& x, const RationalPoint& y) { return (x - y).rho_to_zero(); }

}  // namespace stdiff::group
