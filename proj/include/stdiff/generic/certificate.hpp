#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stdiff/generic/witness.hpp"
#include "stdiff/process/rule.hpp"

namespace stdiff::generic {

/// Self-contained JSON certificates: the rule, every exact rational of the
/// witness, and the claimed averages. Replayable by verify_certificate.
nlohmann::json mance_certificate(const ManceWitness& wit, const process::GeneratorRule& rule, std::size_t k_min);
nlohmann::json oscillation_certificate(const OscillationWitness& wit, const process::GeneratorRule& rule,
                                       std::size_t k_min);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> checks;

  nlohmann::json to_json() const;
};

/// Recomputes every claim exactly from the rule: kernel membership, the
/// window length, the Lipschitz radius, the target containment, and the
/// tent averages along the orbit of x.
VerifyResult verify_certificate(const nlohmann::json& cert);

}  // namespace stdiff::generic
