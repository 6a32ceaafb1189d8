#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "stdiff/group/finite_group.hpp"
#include "stdiff/process/process_cache.hpp"

namespace stdiff::process {

struct PairDeterminant {
  std::size_t n = 0;
  std::size_t m = 0;
  mpz_class det;
};

/// Outcome of checking det(Phi_n - Phi_m) != 0 for all 0 < m < n <= horizon.
/// A pass certifies the Difference Property only up to the horizon.
struct DpReport {
  bool ok = true;
  std::size_t horizon = 0;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  std::vector<PairDeterminant> dets;  // ordered by (n, m)
  /// Set for one-dimensional rules: every det equals Q_n - Q_m = Q_m (Q_n / Q_m - 1).
  std::optional<std::string> closed_form;
  bool closed_form_holds = false;

  nlohmann::json to_json() const;
};

DpReport difference_property_check(ProcessCache& cache, std::size_t horizon, unsigned jobs = 1);

struct SurjectivityReport {
  std::size_t horizon = 0;
  bool all_generators_surjective = true;     // det T_n != 0 for n <= horizon
  std::optional<std::size_t> first_singular;
  bool commuting = true;                      // T_n T_m == T_m T_n pairwise
  std::optional<std::pair<std::size_t, std::size_t>> non_commuting_pair;
  /// Only evaluated when the family commutes:
  /// det(Phi_{n+1} - Phi_n) == det(T_{n+1} - I) * prod_{i <= n} det T_i.
  bool factorization_checked = false;
  bool factorization_holds = false;

  nlohmann::json to_json() const;
};

SurjectivityReport surjectivity_fastpaths(ProcessCache& cache, std::size_t horizon);

/// eta_k = 1 / (ltilde_k^{k-1} * k).
mpq_class eta_schedule(ProcessCache& cache, std::size_t k);

/// Exhaustive Difference-Property search over generator sequences on a
/// finite abelian group.
struct FiniteRefutation {
  std::string group;
  std::uint64_t endomorphism_count = 0;
  std::size_t horizon = 0;
  bool refuted = false;          // every sequence failed within the horizon
  std::size_t max_survival = 0;  // longest prefix Phi_1..Phi_L with the property
  std::size_t refuted_at = 0;    // max_survival + 1
  std::uint64_t nodes_explored = 0;
  /// Endomorphism indices T_1..T_L of one longest surviving sequence.
  std::vector<std::size_t> worst_sequence;
  std::string reason;

  nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultEndomorphismCap = std::uint64_t{1} << 20;

FiniteRefutation finite_dp_refute(const group::FiniteAbelianGroup& group, std::size_t horizon,
                                  std::uint64_t endomorphism_cap = kDefaultEndomorphismCap);

}  // namespace stdiff::process
