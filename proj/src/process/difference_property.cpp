#include "stdiff/process/difference_property.hpp"

#include "stdiff/error.hpp"
#include "stdiff/parallel.hpp"

namespace stdiff::process {

using nlohmann::json;

DpReport difference_property_check(ProcessCache& cache, std::size_t horizon, unsigned jobs) {
  if (horizon < 2) throw Error(Errc::out_of_range, "difference_property_check needs N >= 2");
  cache.extend_to(horizon);
  DpReport report;
  report.horizon = horizon;
  for (std::size_t n = 2; n <= horizon; ++n)
    for (std::size_t m = 1; m < n; ++m) report.dets.push_back({n, m, 0});

  const ProcessCache& frozen = cache;
  parallel_for(report.dets.size(), jobs, [&](std::size_t i) {
    auto& entry = report.dets[i];
    entry.det = (frozen.phi_at(entry.n) - frozen.phi_at(entry.m)).det();
  });

  for (const auto& e : report.dets) {
    if (e.det == 0) {
      report.ok = false;
      report.failing_pair = {e.n, e.m};
      break;
    }
  }

  if (cache.dim() == 1) {
    report.closed_form = "det(Phi_n - Phi_m) = Q_m (Q_n / Q_m - 1), Q_n = Phi_n";
    report.closed_form_holds = true;
    for (const auto& e : report.dets) {
      const mpz_class& qn = cache.phi_at(e.n)(0, 0);
      const mpz_class& qm = cache.phi_at(e.m)(0, 0);
      bool holds;
      if (qm != 0 && mpz_divisible_p(qn.get_mpz_t(), qm.get_mpz_t())) {
        holds = e.det == qm * (qn / qm - 1);
      } else {
        holds = e.det == qn - qm;
      }
      if (!holds) {
        report.closed_form_holds = false;
        break;
      }
    }
  }
  return report;
}

json DpReport::to_json() const {
  json doc;
  doc["ok"] = ok;
  doc["horizon"] = horizon;
  doc["certifies"] = "difference property up to N = " + std::to_string(horizon);
  doc["failing_pair"] = failing_pair ? json::array({failing_pair->first, failing_pair->second}) : json(nullptr);
  json table = json::array();
  for (const auto& e : dets) table.push_back({{"n", e.n}, {"m", e.m}, {"det", e.det.get_str()}});
  doc["dets"] = table;
  if (closed_form) {
    doc["closed_form"] = *closed_form;
    doc["closed_form_holds"] = closed_form_holds;
  }
  return doc;
}

SurjectivityReport surjectivity_fastpaths(ProcessCache& cache, std::size_t horizon) {
  if (horizon < 1) throw Error(Errc::out_of_range, "surjectivity_fastpaths needs N >= 1");
  cache.extend_to(horizon);
  SurjectivityReport report;
  report.horizon = horizon;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (cache.det_generator_at(n) == 0) {
      report.all_generators_surjective = false;
      report.first_singular = n;
      break;
    }
  }
  for (std::size_t n = 1; n <= horizon && report.commuting; ++n)
    for (std::size_t m = 1; m < n; ++m)
      if (!cache.generator_at(n).commutes_with(cache.generator_at(m))) {
        report.commuting = false;
        report.non_commuting_pair = {n, m};
        break;
      }
  if (!report.commuting) return report;

  report.factorization_checked = true;
  report.factorization_holds = true;
  const auto eye = IntMatrix::identity(cache.dim());
  mpz_class prod = 1;
  for (std::size_t n = 1; n < horizon; ++n) {
    prod *= cache.det_generator_at(n);
    const mpz_class lhs = (cache.phi_at(n + 1) - cache.phi_at(n)).det();
    const mpz_class rhs = (cache.generator_at(n + 1) - eye).det() * prod;
    if (lhs != rhs) {
      report.factorization_holds = false;
      break;
    }
  }
  return report;
}

json SurjectivityReport::to_json() const {
  json doc;
  doc["horizon"] = horizon;
  doc["all_generators_surjective"] = all_generators_surjective;
  doc["first_singular"] = first_singular ? json(*first_singular) : json(nullptr);
  doc["commuting"] = commuting;
  doc["non_commuting_pair"] =
      non_commuting_pair ? json::array({non_commuting_pair->first, non_commuting_pair->second}) : json(nullptr);
  doc["commuting_fast_path"] = commuting ? "applicable" : "not-applicable";
  doc["factorization_checked"] = factorization_checked;
  doc["factorization_holds"] = factorization_holds;
  return doc;
}

mpq_class eta_schedule(ProcessCache& cache, std::size_t k) {
  if (k == 0) throw Error(Errc::out_of_range, "eta_schedule needs k >= 1");
  const mpz_class lt = cache.ltilde(k);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), lt.get_mpz_t(), k - 1);
  den *= static_cast<unsigned long>(k);
  return mpq_class(1, den);
}

}  // namespace stdiff::process
