#include "stdiff/rng.hpp"

#include <vector>

namespace stdiff {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SeededStream::SeededStream(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

SeededStream SeededStream::derive(std::uint64_t index) const {
  const std::uint64_t child = mix64(mix64(key_ ^ 0x632be59bd9b4e019ull) + (index + 1) * kGolden);
  return SeededStream(child, true);
}

SeededStream SeededStream::derive(std::string_view label) const {
  // FNV-1a over the label, then treated as an index.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return derive(h ^ 0x5bd1e9955bd1e995ull);
}

std::uint64_t SeededStream::next_u64() {
  const std::uint64_t c = counter_++;
  return mix64(key_ + mix64(c * kGolden + 0xd1b54a32d192ed03ull));
}

double SeededStream::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t SeededStream::uniform_below(std::uint64_t bound) {
  // Lemire-style rejection keeps the result exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r >= limit);
  return r % bound;
}

mpz_class SeededStream::random_bits(unsigned bits) {
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = next_u64();
  mpz_class out;
  if (words == 0) return out;
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
  return out;
}

mpz_class SeededStream::uniform_up_to(const mpz_class& bound) {
  if (bound <= 0) return 0;
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
  mpz_class r;
  do {
    r = random_bits(bits);
  } while (r > bound);
  return r;
}

}  // namespace stdiff
