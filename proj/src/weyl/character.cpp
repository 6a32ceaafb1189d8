#include "stdiff/weyl/character.hpp"

#include <cmath>
#include <numbers>

#include "stdiff/error.hpp"

namespace stdiff::weyl {

Character::Character(std::vector<mpz_class> freq) : freq_(std::move(freq)) {
  if (freq_.empty()) throw Error(Errc::dimension_mismatch, "character needs a frequency vector");
  bool nonzero = false;
  for (const auto& m : freq_) nonzero = nonzero || m != 0;
  if (!nonzero) throw Error(Errc::out_of_range, "character frequency must be nonzero");
}

Character::Character(std::initializer_list<long> freq)
    : Character(std::vector<mpz_class>(freq.begin(), freq.end())) {}

mpz_class Character::phase_raw(const TorusPoint& x) const {
  if (x.dim() != dim()) throw Error(Errc::dimension_mismatch, "character and point dimensions differ");
  mpz_class acc = 0;
  for (std::size_t j = 0; j < dim(); ++j) mpz_addmul(acc.get_mpz_t(), freq_[j].get_mpz_t(), x.raw(j).get_mpz_t());
  mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), x.bits());
  return acc;
}

double Character::phase(const TorusPoint& x) const { return group::scaled_to_double(phase_raw(x), x.bits()); }

std::complex<double> unit_circle(double t) {
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> Character::operator()(const TorusPoint& x) const { return unit_circle(phase(x)); }

Character Character::pullback(const group::IntMatrix& a) const {
  if (a.dim() != dim()) throw Error(Errc::dimension_mismatch, "pullback dimension");
  std::vector<mpz_class> out(dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t i = 0; i < dim(); ++i) out[j] += a(i, j) * freq_[i];
  return Character(std::move(out));
}

mpz_class Character::l1() const {
  mpz_class s = 0;
  for (const auto& m : freq_) s += abs(m);
  return s;
}

std::string Character::label() const {
  std::string out;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (j) out += ';';
    out += freq_[j].get_str();
  }
  return out;
}

std::vector<Character> character_box(std::size_t dim, long bound) {
  if (dim == 0 || bound < 1) throw Error(Errc::out_of_range, "character_box needs d >= 1 and M >= 1");
  std::vector<Character> out;
  std::vector<long> m(dim, -bound);
  for (;;) {
    bool nonzero = false;
    for (long v : m) nonzero = nonzero || v != 0;
    if (nonzero) out.emplace_back(std::vector<mpz_class>(m.begin(), m.end()));
    std::size_t j = 0;
    while (j < dim && ++m[j] > bound) m[j++] = -bound;
    if (j == dim) break;
  }
  return out;
}

}  // namespace stdiff::weyl
