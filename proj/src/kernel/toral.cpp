#include "stdiff/kernel/toral.hpp"

#include <algorithm>
#include <cmath>

#include "stdiff/error.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/rng.hpp"

namespace stdiff::kernel {

using nlohmann::json;

RationalPoint lemma_point(const IntMatrix& a, const RationalPoint& x) {
  const std::size_t n = a.dim();
  if (x.dim() != n) throw Error(Errc::dimension_mismatch, "lemma_point dimension");
  const auto inv = rational_inverse(a);
  std::vector<mpz_class> v(n);
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * x.num(c);
    mpz_fdiv_q(v[r].get_mpz_t(), acc.get_mpz_t(), x.den().get_mpz_t());
  }
  std::vector<mpq_class> y(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) y[r] += inv[r * n + c] * v[c];
  return RationalPoint::from_rationals(y);
}

ToralEstimateReport toral_estimate_check(const IntMatrix& a, std::size_t n_probes, std::uint64_t seed,
                                         std::uint64_t cap) {
  ToralEstimateReport rep;
  rep.dim = a.dim();
  rep.det = a.det();
  if (rep.det == 0) throw Error(Errc::singular_matrix, "toral estimate needs det A != 0");
  rep.op_norm_inv = inverse_op_norm(a);
  rep.bound = static_cast<double>(rep.dim * rep.dim) * rep.op_norm_inv;
  rep.probes = n_probes;

  std::optional<std::vector<double>> flat;
  if (abs(rep.det) <= cap) flat = kernel_coordinates(kernel_points(a, cap));
  SeededStream master = SeededStream(seed).derive("probe");
  mpq_class worst = 0;
  double worst_near = 0.0;
  for (std::size_t i = 0; i < n_probes; ++i) {
    SeededStream rng = master.derive(i);
    const auto xt = group::haar_sample(rng, rep.dim, group::kMinPrecisionBits);
    const auto x = RationalPoint::from_torus(xt);
    const auto y = lemma_point(a, x);
    worst = std::max(worst, group::rho(x, y));
    if (flat) worst_near = std::max(worst_near, distance_to_kernel(*flat, xt.coords()));
  }
  rep.worst_lemma_distance = worst.get_d();
  if (flat) rep.worst_nearest_distance = worst_near;
  rep.pass = rep.worst_lemma_distance <= rep.bound + 1e-8 &&
             (!rep.worst_nearest_distance || *rep.worst_nearest_distance <= rep.bound + 1e-8);
  return rep;
}

json ToralEstimateReport::to_json() const {
  json j{{"dim", dim},
         {"det", det.get_str()},
         {"op_norm_inv", op_norm_inv},
         {"bound", bound},
         {"probes", probes},
         {"worst_lemma_distance", worst_lemma_distance},
         {"pass", pass}};
  j["worst_nearest_distance"] = worst_nearest_distance ? json(*worst_nearest_distance) : json(nullptr);
  return j;
}

json kernel_report(const IntMatrix& a, std::size_t m, double resolution, std::uint64_t seed, unsigned jobs) {
  const auto lattice = kernel_points(a);
  const auto cover = covering_radius(lattice, resolution, 1000, seed, 200'000'000, jobs);
  const double op = inverse_op_norm(a);
  const double bound = static_cast<double>(a.dim() * a.dim()) * op;
  json j{{"m", m},
         {"det", lattice.det.get_str()},
         {"kernel_size", lattice.points.size()},
         {"op_norm_inv", op},
         {"covering_radius_interval", {cover.lower, cover.upper}},
         {"bound", bound},
         {"pass", cover.upper <= bound + 1e-8}};
  if (cover.exact) j["covering_radius_exact"] = cover.exact_value.get_str();
  return j;
}

DensityReport kernel_density_criterion(process::ProcessCache& cache, std::size_t horizon, double resolution,
                                       std::uint64_t cap, unsigned jobs) {
  if (horizon < 2) throw Error(Errc::out_of_range, "density criterion needs N >= 2");
  DensityReport rep;
  rep.horizon = horizon;
  cache.extend_to(horizon);
  const std::size_t d = cache.dim();
  double running = 0.0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (cache.det_phi_at(n) == 0) throw Error(Errc::singular_matrix, "det Phi_" + std::to_string(n) + " = 0");
    const double op = inverse_op_norm(cache.phi_at(n));
    running = n == 1 ? op : std::min(running, op);
    rep.op_norms.push_back(op);
    rep.running_min.push_back(running);
  }
  const std::size_t split = horizon / 2;  // head: n <= split, tail: n > split
  rep.head_min = *std::min_element(rep.op_norms.begin(), rep.op_norms.begin() + static_cast<long>(split));
  rep.liminf_proxy = *std::min_element(rep.op_norms.begin() + static_cast<long>(split), rep.op_norms.end());
  const double dd = static_cast<double>(d * d);
  rep.epsilon = dd * running;

  // ker Phi_m grows with m, so the union up to N is ker Phi_N.
  std::size_t m = horizon;
  while (m > 0 && abs(cache.det_phi_at(m)) > cap) --m;
  rep.enumerated_m = m;
  const double lemma_bound = dd * rep.op_norms[horizon - 1];
  if (m > 0) {
    const auto lattice = kernel_points(cache.phi_at(m), cap);
    const auto cover = covering_radius(lattice, resolution, 1000, 0, 200'000'000, jobs);
    if (m == horizon) {
      rep.union_lower = cover.lower;
      rep.union_upper = cover.upper;
      if (cover.exact) rep.union_exact = cover.exact_value;
    } else {
      rep.union_lower = 0.0;
      rep.union_upper = std::min(cover.upper, lemma_bound);
    }
  } else {
    rep.union_upper = std::min(lemma_bound, static_cast<double>(d) / 2.0);
  }
  rep.dense_at_epsilon = rep.union_upper <= rep.epsilon + 1e-8;
  const bool decreasing = rep.liminf_proxy < rep.head_min;
  const bool nontrivial = dd * rep.liminf_proxy < static_cast<double>(d) / 2.0;
  rep.criterion_met = decreasing && nontrivial && rep.dense_at_epsilon;
  rep.verdict = rep.criterion_met ? "dense at resolution epsilon" : "criterion not met";
  return rep;
}

json DensityReport::to_json() const {
  json j{{"horizon", horizon},
         {"op_norms", op_norms},
         {"running_min", running_min},
         {"head_min", head_min},
         {"liminf_proxy", liminf_proxy},
         {"epsilon", epsilon},
         {"union_covering_radius_interval", {union_lower, union_upper}},
         {"enumerated_m", enumerated_m},
         {"dense_at_epsilon", dense_at_epsilon},
         {"criterion_met", criterion_met},
         {"verdict", verdict}};
  j["union_covering_radius_exact"] = union_exact ? json(union_exact->get_str()) : json(nullptr);
  return j;
}

}  // namespace stdiff::kernel
