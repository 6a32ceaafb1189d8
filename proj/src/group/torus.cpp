#include "stdiff/group/torus.hpp"

#include <cmath>
#include <utility>

#include "stdiff/error.hpp"

namespace stdiff::group {
namespace {

void reduce(mpz_class& v, unsigned bits) { mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits); }

void check_compatible(const TorusPoint& x, const TorusPoint& y) {
  if (x.dim() != y.dim()) throw Error(Errc::dimension_mismatch, "torus points of different dimension");
  if (x.bits() != y.bits()) throw Error(Errc::dimension_mismatch, "torus points of different precision");
}

mpz_class wrapped_distance_raw(const mpz_class& diff, unsigned bits) {
  // diff already reduced to [0, 2^B)
  mpz_class other;
  mpz_ui_pow_ui(other.get_mpz_t(), 2, bits);
  other -= diff;
  return diff < other ? diff : other;
}

}  // namespace

double scaled_to_double(const mpz_class& numerator, unsigned bits) {
  if (numerator == 0) return 0.0;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, numerator.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp - static_cast<long>(bits)));
}

TorusPoint::TorusPoint(std::size_t dim, unsigned bits) : bits_(bits), raw_(dim) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "dimension must be positive");
  if (bits < kMinPrecisionBits) throw Error(Errc::out_of_range, "precision must be at least 64 bits");
}

TorusPoint TorusPoint::from_raw(unsigned bits, std::vector<mpz_class> raw) {
  TorusPoint p(raw.size(), bits);
  p.raw_ = std::move(raw);
  for (auto& v : p.raw_) reduce(v, bits);
  return p;
}

TorusPoint TorusPoint::from_rationals(unsigned bits, std::span<const mpq_class> coords) {
  std::vector<mpz_class> raw(coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) {
    mpz_class num = coords[j].get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
    mpz_fdiv_q(raw[j].get_mpz_t(), num.get_mpz_t(), coords[j].get_den().get_mpz_t());
  }
  return from_raw(bits, std::move(raw));
}

TorusPoint TorusPoint::from_doubles(unsigned bits, std::span<const double> coords) {
  std::vector<mpq_class> q(coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) q[j] = mpq_class(coords[j]);
  return from_rationals(bits, q);
}

double TorusPoint::coord(std::size_t j) const { return scaled_to_double(raw_[j], bits_); }

mpq_class TorusPoint::exact(std::size_t j) const {
  mpq_class q(raw_[j]);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits_);
  return q;
}

std::vector<double> TorusPoint::coords() const {
  std::vector<double> out(dim());
  for (std::size_t j = 0; j < dim(); ++j) out[j] = coord(j);
  return out;
}

TorusPoint TorusPoint::operator+(const TorusPoint& rhs) const {
  check_compatible(*this, rhs);
  TorusPoint out(dim(), bits_);
  for (std::size_t j = 0; j < dim(); ++j) {
    out.raw_[j] = raw_[j] + rhs.raw_[j];
    reduce(out.raw_[j], bits_);
  }
  return out;
}

TorusPoint TorusPoint::operator-(const TorusPoint& rhs) const {
  check_compatible(*this, rhs);
  TorusPoint out(dim(), bits_);
  for (std::size_t j = 0; j < dim(); ++j) {
    out.raw_[j] = raw_[j] - rhs.raw_[j];
    reduce(out.raw_[j], bits_);
  }
  return out;
}

TorusPoint TorusPoint::operator-() const { return TorusPoint(dim(), bits_) - *this; }

TorusPoint BallOffset::as_point() const { return TorusPoint::from_raw(bits, steps); }

mpq_class BallOffset::l1_norm() const {
  mpz_class s = 0;
  for (const auto& v : steps) s += abs(v);
  mpq_class q(s);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits);
  return q;
}

std::vector<double> BallOffset::coords() const {
  std::vector<double> out(steps.size());
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const double mag = scaled_to_double(abs(steps[j]), bits);
    out[j] = steps[j] < 0 ? -mag : mag;
  }
  return out;
}

mpz_class rho_to_zero_raw(const TorusPoint& x) {
  mpz_class s = 0;
  for (const auto& v : x.raw()) s += wrapped_distance_raw(v, x.bits());
  return s;
}

mpq_class rho(const TorusPoint& x, const TorusPoint& y) {
  check_compatible(x, y);
  mpq_class q(rho_to_zero_raw(x - y));
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), x.bits());
  return q;
}

double rho_double(const TorusPoint& x, const TorusPoint& y) {
  check_compatible(x, y);
  return scaled_to_double(rho_to_zero_raw(x - y), x.bits());
}

void apply_into(const IntMatrix& a, const TorusPoint& x, TorusPoint& out) {
  if (a.dim() != x.dim()) throw Error(Errc::dimension_mismatch, "endomorphism and point dimensions differ");
  if (out.dim() != x.dim() || out.bits() != x.bits()) out = TorusPoint(x.dim(), x.bits());
  auto& dst = out.raw_;
  const std::size_t d = x.dim();
  for (std::size_t i = 0; i < d; ++i) {
    mpz_class& acc = dst[i];
    acc = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const mpz_class& aij = a(i, j);
      if (aij == 0) continue;
      mpz_addmul(acc.get_mpz_t(), aij.get_mpz_t(), x.raw(j).get_mpz_t());
    }
    reduce(acc, x.bits());
  }
}

TorusPoint apply(const IntMatrix& a, const TorusPoint& x) {
  TorusPoint out(x.dim(), x.bits());
  apply_into(a, x, out);
  return out;
}

TorusPoint haar_sample(SeededStream& rng, std::size_t dim, unsigned bits) {
  std::vector<mpz_class> raw(dim);
  for (auto& v : raw) v = rng.random_bits(bits);
  return TorusPoint::from_raw(bits, std::move(raw));
}

BallOffset ball_offset_sample(SeededStream& rng, std::size_t dim, const mpq_class& r, unsigned bits) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "dimension must be positive");
  if (r <= 0 || r > mpq_class(static_cast<long>(dim), 2))
    throw Error(Errc::out_of_range, "ball radius must lie in (0, d/2]");
  // r * 2^B in grid steps; the ball is {v : sum |v_j| < scaled}.
  mpq_class scaled = r;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  if (scaled < 1) throw Error(Errc::degenerate_radius, "radius below the 2^-B grid; raise the precision");
  // Box half-width in steps: largest v with v < scaled and v < 2^(B-1).
  mpz_class half;
  mpz_cdiv_q(half.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  half -= 1;
  mpz_class box_cap;
  mpz_ui_pow_ui(box_cap.get_mpz_t(), 2, bits - 1);
  box_cap -= 1;
  if (half > box_cap) half = box_cap;
  const mpz_class width = 2 * half;

  BallOffset out;
  out.bits = bits;
  out.steps.resize(dim);
  for (;;) {
    mpz_class total = 0;
    for (auto& v : out.steps) {
      v = rng.uniform_up_to(width) - half;
      total += abs(v);
    }
    if (mpq_class(total) < scaled) return out;
  }
}

mpq_class ball_volume(std::size_t dim, const mpq_class& r) {
  if (r <= 0 || r > mpq_class(1, 2)) throw Error(Errc::out_of_range, "ball_volume needs 0 < r <= 1/2");
  mpq_class v = 1;
  mpz_class fact = 1;
  for (std::size_t i = 1; i <= dim; ++i) {
    v *= 2 * r;
    fact *= static_cast<unsigned long>(i);
  }
  v /= fact;
  return v;
}

}  // namespace stdiff::group
