#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stdiff {

/// Failure signals shared by every module.
enum class Errc {
  dimension_mismatch,
  precision_exhausted,
  out_of_range,
  singular_matrix,
  rule_exhausted,
  search_budget,
  unsupported_dim,
  degenerate_radius,
  witness_not_found,
  cap_exceeded,
  invalid_config,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::precision_exhausted: return "precision_exhausted";
    case Errc::out_of_range: return "out_of_range";
    case Errc::singular_matrix: return "singular_matrix";
    case Errc::rule_exhausted: return "rule_exhausted";
    case Errc::search_budget: return "search_budget";
    case Errc::unsupported_dim: return "unsupported_dim";
    case Errc::degenerate_radius: return "degenerate_radius";
    case Errc::witness_not_found: return "witness_not_found";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::invalid_config: return "invalid_config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a fixed-point orbit would run out of fractional bits.
/// Carries the precision the caller should have used.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(unsigned required_bits, unsigned available_bits)
      : Error(Errc::precision_exhausted,
              "orbit needs B >= " + std::to_string(required_bits) + " fractional bits, have " +
                  std::to_string(available_bits)),
        required_(required_bits) {}

  unsigned required_bits() const noexcept { return required_; }

 private:
  unsigned required_;
};

}  // namespace stdiff
