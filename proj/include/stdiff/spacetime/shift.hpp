#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "stdiff/process/process_cache.hpp"
#include "stdiff/weyl/weyl_sum.hpp"

namespace stdiff::spacetime {

/// Gap sequence l_1, l_2, ... cycled from a finite list (l_n >= 1).
class GapSequence {
 public:
  explicit GapSequence(std::vector<std::uint64_t> gaps);
  std::uint64_t gap(std::size_t n) const;  // n >= 1
  /// Lambda_n = l_1 + ... + l_n, Lambda_0 = 0.
  std::uint64_t lambda(std::size_t n) const;
  const std::vector<std::uint64_t>& pattern() const { return gaps_; }

 private:
  std::vector<std::uint64_t> gaps_;
  std::uint64_t period_sum_ = 0;
};

struct ShiftReport {
  std::size_t k = 0;
  unsigned bits = 0;
  std::optional<double> star_discrepancy;  // d = 1 only
  weyl::UdReport ud;
  std::vector<group::TorusPoint> points;   // y_n = Phi_n g_{Lambda_n}, n < k

  nlohmann::json to_json() const;
};

/// y_n = Phi_n g_{Lambda_n} for n < k, where g_0, g_1, ... are i.i.d. Haar
/// coordinates of the shift space; only the indices Lambda_n are drawn, each
/// from stream (seed, "g", Lambda_n). Tested with ud_test over the character
/// box ||m||_inf <= char_bound and, in d = 1, star discrepancy.
ShiftReport run_shift_ud(process::ProcessCache& cache, const GapSequence& gaps, std::size_t k, std::uint64_t seed,
                         long char_bound = 8, unsigned jobs = 1);

}  // namespace stdiff::spacetime
