#include "stdiff/process/process_cache.hpp"

#include <algorithm>
#include <utility>

#include "stdiff/error.hpp"

namespace stdiff::process {

ProcessCache::ProcessCache(GeneratorRule rule) : rule_(std::move(rule)) {
  gens_.emplace_back(IntMatrix::identity(rule_.dim()));
  phis_.push_back(IntMatrix::identity(rule_.dim()));
  det_gen_.emplace_back(1);
  dets_.emplace_back(1);
  lips_.emplace_back(1);
  bits_prefix_.push_back(0);
}

void ProcessCache::extend_to(std::size_t n) {
  while (materialized() < n) {
    const std::size_t next = materialized() + 1;
    IntMatrix t = rule_.generator(next);
    IntMatrix phi = t * phis_.back();
    mpz_class det_t = t.det();
    mpz_class det_phi = phi.det();
    if (det_phi != det_t * dets_.back())
      throw Error(Errc::invalid_config, "determinant multiplicativity violated at n = " + std::to_string(next));
    mpz_class lip = t.col_norm();
    bits_prefix_.push_back(bits_prefix_.back() + group::ceil_log2(lip));
    lips_.push_back(std::move(lip));
    gens_.push_back(std::move(t));
    phis_.push_back(std::move(phi));
    det_gen_.push_back(std::move(det_t));
    dets_.push_back(std::move(det_phi));
  }
}

namespace {

void require(std::size_t n, std::size_t have) {
  if (n > have)
    throw Error(Errc::out_of_range, "process prefix not materialized to n = " + std::to_string(n));
}

}  // namespace

const IntMatrix& ProcessCache::phi(std::size_t n) {
  extend_to(n);
  return phis_[n];
}

const IntMatrix& ProcessCache::phi_at(std::size_t n) const {
  require(n, materialized());
  return phis_[n];
}

const IntMatrix& ProcessCache::generator_at(std::size_t n) const {
  require(n, materialized());
  if (n == 0) throw Error(Errc::out_of_range, "generators are indexed from n = 1");
  return gens_[n];
}

const mpz_class& ProcessCache::det_phi_at(std::size_t n) const {
  require(n, materialized());
  return dets_[n];
}

const mpz_class& ProcessCache::det_generator_at(std::size_t n) const {
  require(n, materialized());
  return det_gen_[n];
}

const mpz_class& ProcessCache::lipschitz_at(std::size_t n) const {
  require(n, materialized());
  if (n == 0) throw Error(Errc::out_of_range, "generators are indexed from n = 1");
  return lips_[n];
}

mpz_class ProcessCache::ltilde(std::size_t k) {
  if (k == 0) throw Error(Errc::out_of_range, "ltilde needs k >= 1");
  extend_to(k - 1);
  mpz_class best = 1;
  for (std::size_t n = 1; n < k; ++n) best = std::max(best, lips_[n]);
  return best;
}

IntMatrix ProcessCache::tau(std::size_t s, std::size_t t) {
  if (s < t) throw Error(Errc::out_of_range, "tau(s, t) needs s >= t");
  extend_to(s);
  IntMatrix out = IntMatrix::identity(dim());
  for (std::size_t n = t + 1; n <= s; ++n) out = gens_[n] * out;
  return out;
}

unsigned ProcessCache::horizon_bits(std::size_t k) {
  extend_to(k);
  return bits_prefix_[k];
}

unsigned ProcessCache::horizon_bits_at(std::size_t k) const {
  require(k, materialized());
  return bits_prefix_[k];
}

unsigned ProcessCache::required_bits(std::size_t orbit_length, unsigned extra) {
  const unsigned need = horizon_bits(orbit_length > 0 ? orbit_length - 1 : 0) + 64 + extra;
  return std::max(group::kMinPrecisionBits, (need + 63) / 64 * 64);
}

void ProcessCache::check_precision(std::size_t orbit_length, unsigned bits) {
  const unsigned need = horizon_bits(orbit_length > 0 ? orbit_length - 1 : 0);
  if (need > bits) throw PrecisionExhausted(required_bits(orbit_length), bits);
}

void ProcessCache::check_precision_at(std::size_t orbit_length, unsigned bits) const {
  const unsigned need = horizon_bits_at(orbit_length > 0 ? orbit_length - 1 : 0);
  if (need > bits) throw PrecisionExhausted(std::max(group::kMinPrecisionBits, (need + 64 + 63) / 64 * 64), bits);
}

void ProcessCache::step(std::size_t n, TorusPoint& x, TorusPoint& scratch) const {
  group::apply_into(generator_at(n), x, scratch);
  std::swap(x, scratch);
}

std::vector<TorusPoint> ProcessCache::orbit(const TorusPoint& x, std::size_t k) {
  extend_to(k > 0 ? k - 1 : 0);
  check_precision(k, x.bits());
  std::vector<TorusPoint> out;
  out.reserve(k);
  if (k == 0) return out;
  out.push_back(x);
  TorusPoint cur = x, scratch(x.dim(), x.bits());
  for (std::size_t i = 1; i < k; ++i) {
    step(i, cur, scratch);
    out.push_back(cur);
  }
  return out;
}

}  // namespace stdiff::process
