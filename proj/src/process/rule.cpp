#include "stdiff/process/rule.hpp"

#include <fstream>

#include "stdiff/error.hpp"

namespace stdiff::process {
namespace {

using nlohmann::json;

mpz_class parse_int(const json& v) {
  mpz_class out;
  if (v.is_number_integer()) {
    out = mpz_class(v.dump());
  } else if (v.is_string()) {
    if (out.set_str(v.get<std::string>(), 10) != 0)
      throw Error(Errc::invalid_config, "bad integer '" + v.get<std::string>() + "'");
  } else {
    throw Error(Errc::invalid_config, "expected an integer, got " + v.dump());
  }
  return out;
}

json int_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

IntMatrix parse_matrix(const json& m, std::size_t dim) {
  if (!m.is_array() || m.size() != dim) throw Error(Errc::invalid_config, "matrix must have dim rows");
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != dim) throw Error(Errc::invalid_config, "matrix must be square dim x dim");
    std::vector<mpz_class> r;
    for (const auto& v : row) r.push_back(parse_int(v));
    rows.push_back(std::move(r));
  }
  return IntMatrix(rows);
}

json matrix_to_json(const IntMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(int_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::constant_matrix: return "constant_matrix";
    case RuleKind::cantor_multipliers: return "cantor_multipliers";
    case RuleKind::explicit_list: return "explicit_list";
    case RuleKind::matrix_formula: return "matrix_formula";
  }
  return "?";
}

RuleKind rule_kind_from_string(const std::string& name) {
  if (name == "constant_matrix") return RuleKind::constant_matrix;
  if (name == "cantor_multipliers") return RuleKind::cantor_multipliers;
  if (name == "explicit_list") return RuleKind::explicit_list;
  if (name == "matrix_formula") return RuleKind::matrix_formula;
  throw Error(Errc::invalid_config, "unknown rule kind '" + name + "'");
}

GeneratorRule GeneratorRule::constant(IntMatrix a) {
  GeneratorRule r;
  r.kind_ = RuleKind::constant_matrix;
  r.dim_ = a.dim();
  r.matrices_.push_back(std::move(a));
  return r;
}

GeneratorRule GeneratorRule::doubling() { return constant(IntMatrix{{2}}); }

GeneratorRule GeneratorRule::identity(std::size_t dim) { return constant(IntMatrix::identity(dim)); }

GeneratorRule GeneratorRule::cantor(std::vector<mpz_class> multipliers, bool repeat) {
  if (multipliers.empty()) throw Error(Errc::invalid_config, "cantor rule needs at least one multiplier");
  for (const auto& q : multipliers)
    if (q < 2) throw Error(Errc::invalid_config, "cantor multipliers must be >= 2");
  GeneratorRule r;
  r.kind_ = RuleKind::cantor_multipliers;
  r.dim_ = 1;
  r.multipliers_ = std::move(multipliers);
  r.repeat_ = repeat;
  return r;
}

GeneratorRule GeneratorRule::cantor_affine(long a, long b) {
  if (a < 0 || a + b < 2) throw Error(Errc::invalid_config, "affine multipliers a n + b must be >= 2 for n >= 1");
  GeneratorRule r;
  r.kind_ = RuleKind::cantor_multipliers;
  r.dim_ = 1;
  r.affine_ = {a, b};
  return r;
}

GeneratorRule GeneratorRule::explicit_list(std::vector<IntMatrix> matrices) {
  if (matrices.empty()) throw Error(Errc::invalid_config, "explicit_list needs at least one matrix");
  GeneratorRule r;
  r.kind_ = RuleKind::explicit_list;
  r.dim_ = matrices.front().dim();
  for (const auto& m : matrices)
    if (m.dim() != r.dim_) throw Error(Errc::invalid_config, "all matrices must share the dimension");
  r.matrices_ = std::move(matrices);
  return r;
}

GeneratorRule GeneratorRule::matrix_formula(std::vector<IntMatrix> table) {
  GeneratorRule r = explicit_list(std::move(table));
  r.kind_ = RuleKind::matrix_formula;
  return r;
}

GeneratorRule GeneratorRule::from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind")) throw Error(Errc::invalid_config, "rule document needs a \"kind\"");
  const RuleKind kind = rule_kind_from_string(doc.at("kind").get<std::string>());
  const std::size_t dim = doc.value("dim", std::size_t{1});
  if (dim == 0 || dim > 8) throw Error(Errc::invalid_config, "dim must lie in 1..8");
  if (kind == RuleKind::cantor_multipliers) {
    if (dim != 1) throw Error(Errc::invalid_config, "cantor_multipliers is one-dimensional");
    if (doc.contains("affine")) {
      const auto& ab = doc.at("affine");
      if (!ab.is_array() || ab.size() != 2) throw Error(Errc::invalid_config, "affine must be [a, b]");
      return cantor_affine(ab[0].get<long>(), ab[1].get<long>());
    }
    if (!doc.contains("multipliers")) throw Error(Errc::invalid_config, "cantor rule needs \"multipliers\"");
    std::vector<mpz_class> qs;
    for (const auto& v : doc.at("multipliers")) qs.push_back(parse_int(v));
    return cantor(std::move(qs), doc.value("repeat", false));
  }
  if (!doc.contains("matrices") || !doc.at("matrices").is_array() || doc.at("matrices").empty())
    throw Error(Errc::invalid_config, "rule needs a non-empty \"matrices\" list");
  std::vector<IntMatrix> ms;
  for (const auto& m : doc.at("matrices")) ms.push_back(parse_matrix(m, dim));
  switch (kind) {
    case RuleKind::constant_matrix:
      if (ms.size() != 1) throw Error(Errc::invalid_config, "constant_matrix takes exactly one matrix");
      return constant(std::move(ms.front()));
    case RuleKind::explicit_list: return explicit_list(std::move(ms));
    case RuleKind::matrix_formula: return matrix_formula(std::move(ms));
    default: break;
  }
  throw Error(Errc::invalid_config, "unsupported rule");
}

GeneratorRule GeneratorRule::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_config, "cannot open rule file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, "rule file '" + path + "': " + e.what());
  }
  return from_json(doc);
}

json GeneratorRule::to_json() const {
  json doc;
  doc["kind"] = to_string(kind_);
  doc["dim"] = dim_;
  if (kind_ == RuleKind::cantor_multipliers) {
    if (affine_) {
      doc["affine"] = {affine_->first, affine_->second};
    } else {
      json qs = json::array();
      for (const auto& q : multipliers_) qs.push_back(int_to_json(q));
      doc["multipliers"] = qs;
      if (repeat_) doc["repeat"] = true;
    }
  } else {
    json ms = json::array();
    for (const auto& m : matrices_) ms.push_back(matrix_to_json(m));
    doc["matrices"] = ms;
  }
  return doc;
}

IntMatrix GeneratorRule::generator(std::size_t n) const {
  if (n == 0) throw Error(Errc::out_of_range, "generators are indexed from n = 1");
  switch (kind_) {
    case RuleKind::constant_matrix: return matrices_.front();
    case RuleKind::cantor_multipliers: {
      if (affine_) return IntMatrix::scalar(1, mpz_class(affine_->first) * static_cast<unsigned long>(n) + affine_->second);
      if (repeat_) return IntMatrix::scalar(1, multipliers_[(n - 1) % multipliers_.size()]);
      if (n > multipliers_.size())
        throw Error(Errc::rule_exhausted, "cantor rule defines " + std::to_string(multipliers_.size()) + " multipliers");
      return IntMatrix::scalar(1, multipliers_[n - 1]);
    }
    case RuleKind::explicit_list:
      if (n > matrices_.size())
        throw Error(Errc::rule_exhausted, "explicit_list defines " + std::to_string(matrices_.size()) + " matrices");
      return matrices_[n - 1];
    case RuleKind::matrix_formula: return matrices_[(n - 1) % matrices_.size()];
  }
  throw Error(Errc::invalid_config, "unknown rule kind");
}

std::optional<std::size_t> GeneratorRule::horizon() const {
  if (kind_ == RuleKind::explicit_list) return matrices_.size();
  if (kind_ == RuleKind::cantor_multipliers && !affine_ && !repeat_) return multipliers_.size();
  return std::nullopt;
}

}  // namespace stdiff::process
