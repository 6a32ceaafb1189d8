#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stdiff/process/process_cache.hpp"
#include "stdiff/weyl/character.hpp"

namespace stdiff::weyl {

using process::ProcessCache;

/// Running Weyl sums S_gamma(k, x) = (1/k) sum_{i<k} gamma(Phi_i x) for a
/// fixed point and a set of characters, extended incrementally.
///
/// The orbit is advanced once per step and shared by all characters. The
/// cache must already be materialized to the requested length (extend() only
/// reads it), so independent series can be built on worker threads.
class WeylSeries {
 public:
  WeylSeries(const ProcessCache& cache, TorusPoint x, std::vector<Character> chars);

  void extend(std::size_t k);
  std::size_t length() const { return length_; }
  const std::vector<Character>& characters() const { return chars_; }
  const TorusPoint& start() const { return start_; }

  /// S_gamma(k, x) for character index c, 1 <= k <= length().
  std::complex<double> mean(std::size_t c, std::size_t k) const;
  /// k S_gamma(k, x), the unnormalized partial sum.
  std::complex<double> partial_sum(std::size_t c, std::size_t k) const;

 private:
  const ProcessCache* cache_;
  TorusPoint start_;
  TorusPoint current_;
  TorusPoint scratch_;
  std::vector<Character> chars_;
  std::vector<std::vector<std::complex<double>>> sums_;  // sums_[c][k] = sum_{i<k}
  std::size_t length_ = 0;
};

/// Single S_gamma(k, x). Extends the cache and checks precision.
std::complex<double> weyl_sum(ProcessCache& cache, const TorusPoint& x, const Character& chr, std::size_t k);

struct VarianceEstimate {
  std::size_t k = 0;
  std::size_t samples = 0;
  double mean_sq = 0.0;  // Monte Carlo mean of |S_gamma(k, .)|^2
  double sigma = 0.0;    // sample standard deviation of |S|^2
  double ci = 0.0;       // 3 sigma / sqrt(N)
  double expected = 0.0; // 1 / k
  bool within_ci() const { return std::abs(mean_sq - expected) <= ci; }
};

/// Estimates the integral of |S_gamma(k, .)|^2 against Haar measure for each
/// k in ks, from n_samples Haar points at the default precision for max(ks).
/// Sample s uses stream (seed, s); results do not depend on `jobs`.
std::vector<VarianceEstimate> variance_identity_mc(ProcessCache& cache, const Character& chr,
                                                   const std::vector<std::size_t>& ks, std::size_t n_samples,
                                                   std::uint64_t seed, unsigned jobs = 1);

/// |S(k)| <= |S(floor(sqrt k)^2)| + 2 / sqrt(k), with 1e-12 slack for the
/// floating-point summation.
bool subsequence_bound_check(const WeylSeries& series, std::size_t c, std::size_t k);

struct CharacterResult {
  Character chr;
  std::complex<double> value;
};

struct UdReport {
  std::size_t k = 0;
  double threshold = 0.0;
  double max_abs = 0.0;
  bool pass = false;
  std::vector<CharacterResult> per_char;

  nlohmann::json to_json() const;
};

/// Weyl-criterion test of the orbit of x: pass iff max |S_gamma(k, x)| <= threshold
/// over the finite character set.
UdReport ud_test(ProcessCache& cache, const TorusPoint& x, const std::vector<Character>& chars, std::size_t k,
                 double threshold);
UdReport ud_test(const WeylSeries& series, std::size_t k, double threshold);
/// Same test on an explicit sequence (first k points).
UdReport ud_test_points(const std::vector<TorusPoint>& points, const std::vector<Character>& chars, std::size_t k,
                        double threshold);

/// Default threshold c / sqrt(k) with c = 3.
double default_threshold(std::size_t k);

/// Rows "run_id,k,m_vector,re,im,abs" for every character and every k in ks.
void write_weyl_csv(std::ostream& os, const std::string& run_id, const WeylSeries& series,
                    const std::vector<std::size_t>& ks, bool header = true);

}  // namespace stdiff::weyl
