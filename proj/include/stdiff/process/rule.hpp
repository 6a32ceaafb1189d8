#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "stdiff/group/int_matrix.hpp"

namespace stdiff::process {

using group::IntMatrix;

enum class RuleKind {
  constant_matrix,     ///< T_n = A for every n
  cantor_multipliers,  ///< d = 1, T_n = multiplication by q_n >= 2
  explicit_list,       ///< T_1, ..., T_N then exhausted
  matrix_formula,      ///< periodic table: T_n = table[(n - 1) mod len]
};

std::string to_string(RuleKind kind);
RuleKind rule_kind_from_string(const std::string& name);

/// Generator sequence (T_n)_{n >= 1} of toral endomorphisms.
///
/// JSON form: {"kind": ..., "dim": d, "multipliers": [...] | "matrices": [[[...]]]}.
/// Cantor rules additionally accept "repeat": true (cycle the list) or
/// "affine": [a, b] (q_n = a n + b). Integers may be given as JSON numbers or
/// decimal strings.
class GeneratorRule {
 public:
  static GeneratorRule constant(IntMatrix a);
  static GeneratorRule doubling();
  static GeneratorRule identity(std::size_t dim);
  static GeneratorRule cantor(std::vector<mpz_class> multipliers, bool repeat = false);
  static GeneratorRule cantor_affine(long a, long b);
  static GeneratorRule explicit_list(std::vector<IntMatrix> matrices);
  static GeneratorRule matrix_formula(std::vector<IntMatrix> table);

  static GeneratorRule from_json(const nlohmann::json& doc);
  static GeneratorRule load(const std::string& path);
  nlohmann::json to_json() const;

  RuleKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  /// T_n for n >= 1; throws rule_exhausted past the declared horizon.
  IntMatrix generator(std::size_t n) const;
  /// Last n for which generator(n) is defined, if finite.
  std::optional<std::size_t> horizon() const;

 private:
  RuleKind kind_ = RuleKind::constant_matrix;
  std::size_t dim_ = 1;
  std::vector<IntMatrix> matrices_;
  std::vector<mpz_class> multipliers_;
  bool repeat_ = false;
  std::optional<std::pair<long, long>> affine_;
};

}  // namespace stdiff::process
