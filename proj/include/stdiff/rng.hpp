#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include <gmpxx.h>

namespace stdiff {

/// Counter-based splittable stream.
///
/// A stream is a 64-bit key plus a counter; output i is a SplitMix64 mix of
/// (key, i). Child streams are keyed by hashing (parent key, index), so any
/// task can rebuild its stream from the master seed and its path without
/// touching shared state. Results never depend on scheduling.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  explicit SeededStream(std::uint64_t seed);

  SeededStream derive(std::uint64_t index) const;
  SeededStream derive(std::string_view label) const;

  std::uint64_t next_u64();
  std::uint64_t operator()() { return next_u64(); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform integer in [0, 2^bits).
  mpz_class random_bits(unsigned bits);

  /// Uniform integer in [0, bound], bound >= 0.
  mpz_class uniform_up_to(const mpz_class& bound);

  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  SeededStream(std::uint64_t key, bool) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace stdiff
