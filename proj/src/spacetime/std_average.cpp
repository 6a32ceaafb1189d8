#include "stdiff/spacetime/std_average.hpp"

#include <algorithm>
#include <cmath>

#include "stdiff/error.hpp"
#include "stdiff/format.hpp"
#include "stdiff/parallel.hpp"
#include "stdiff/process/difference_property.hpp"

namespace stdiff::spacetime {

using nlohmann::json;

namespace {

/// Core of std_average against a precomputed center orbit (length >= k).
StdResultRow ball_average(const ProcessCache& cache, const std::vector<TorusPoint>& center_orbit,
                          const Observable& f, std::size_t k, const mpq_class& r_k, std::size_t samples,
                          const SeededStream& stream, unsigned jobs) {
  if (samples < 16) throw Error(Errc::out_of_range, "std_average needs M >= 16 ball samples");
  if (k == 0 || center_orbit.size() < k) throw Error(Errc::out_of_range, "center orbit shorter than k");
  const TorusPoint& center = center_orbit.front();
  const std::size_t dim = center.dim();
  const unsigned bits = center.bits();

  std::vector<std::complex<double>> values(samples);
  parallel_for(samples, jobs, [&](std::size_t s) {
    SeededStream rng = stream.derive(s);
    TorusPoint u = group::ball_offset_sample(rng, dim, r_k, bits).as_point();
    TorusPoint scratch(dim, bits);
    std::complex<double> sum{};
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) cache.step(i, u, scratch);
      sum += f(center_orbit[i] + u);
    }
    values[s] = sum / static_cast<double>(k);
  });

  StdResultRow row;
  row.k = k;
  row.r_k = r_k;
  row.center = center;
  row.target = f.integral();
  std::complex<double> total{};
  for (const auto& v : values) total += v;
  row.alpha_hat = total / static_cast<double>(samples);
  double ss = 0.0;
  for (const auto& v : values) ss += std::norm(v - row.alpha_hat);
  const double sigma = std::sqrt(ss / static_cast<double>(samples - 1));
  row.mc_ci = 3.0 * sigma / std::sqrt(static_cast<double>(samples));
  std::complex<double> tsum{};
  for (std::size_t i = 0; i < k; ++i) tsum += f(center_orbit[i]);
  row.time_avg = tsum / static_cast<double>(k);
  return row;
}

}  // namespace

StdResultRow std_average(ProcessCache& cache, const TorusPoint& center, const Observable& f, std::size_t k,
                         const mpq_class& r_k, std::size_t samples, const SeededStream& stream, unsigned jobs) {
  if (k == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  if (center.dim() != f.dim() || center.dim() != cache.dim())
    throw Error(Errc::dimension_mismatch, "center, observable and process dimensions differ");
  const auto orbit = cache.orbit(center, k);
  return ball_average(cache, orbit, f, k, r_k, samples, stream, jobs);
}

mpq_class propagated_radius(ProcessCache& cache, std::size_t k, const mpq_class& r) {
  if (k == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  cache.extend_to(k - 1);
  mpz_class product = 1, best = 1;
  for (std::size_t i = 1; i < k; ++i) {
    product *= cache.lipschitz_at(i);
    best = std::max(best, product);
  }
  mpq_class out = r * best;
  out.canonicalize();
  return out;
}

std::vector<std::size_t> StdRunConfig::k_grid() const {
  if (!ks.empty()) return ks;
  if (k_max == 0) throw Error(Errc::invalid_config, "k_max must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= k_max; k *= 2) out.push_back(k);
  if (out.back() != k_max) out.push_back(k_max);
  return out;
}

namespace {

std::string to_string(CenterMode mode) {
  switch (mode) {
    case CenterMode::fixed: return "fixed";
    case CenterMode::haar: return "haar";
    case CenterMode::per_k: return "per_k";
  }
  return "haar";
}

CenterMode center_mode_from(const std::string& s) {
  if (s == "fixed") return CenterMode::fixed;
  if (s == "haar") return CenterMode::haar;
  if (s == "per_k") return CenterMode::per_k;
  throw Error(Errc::invalid_config, "unknown center_mode '" + s + "'");
}

}  // namespace

json StdRunConfig::to_json() const {
  json factors_json = json::array();
  for (const auto& q : factors) factors_json.push_back(q.get_str());
  json center_json = json::array();
  for (const auto& q : center) center_json.push_back(q.get_str());
  return json{{"observable", observable},
              {"k_max", k_max},
              {"ks", ks},
              {"radius_rule", radius_rule == RadiusRule::eta_schedule ? "eta_schedule" : "user_factors"},
              {"factors", factors_json},
              {"samples", samples},
              {"seed", seed},
              {"center_mode", to_string(center_mode)},
              {"center", center_json},
              {"bits", bits}};
}

StdRunConfig StdRunConfig::from_json(const json& doc) {
  StdRunConfig c;
  try {
    c.observable = doc.value("observable", c.observable);
    c.k_max = doc.value("k_max", c.k_max);
    if (doc.contains("ks")) c.ks = doc.at("ks").get<std::vector<std::size_t>>();
    const std::string rule = doc.value("radius_rule", std::string("eta_schedule"));
    if (rule == "eta_schedule") c.radius_rule = RadiusRule::eta_schedule;
    else if (rule == "user_factors") c.radius_rule = RadiusRule::user_factors;
    else throw Error(Errc::invalid_config, "unknown radius_rule '" + rule + "'");
    if (doc.contains("factors"))
      for (const auto& q : doc.at("factors")) c.factors.push_back(parse_rational(q.is_string() ? q.get<std::string>() : q.dump()));
    c.samples = doc.value("samples", c.samples);
    c.seed = doc.value("seed", c.seed);
    c.center_mode = center_mode_from(doc.value("center_mode", std::string("haar")));
    if (doc.contains("center"))
      for (const auto& q : doc.at("center")) c.center.push_back(parse_rational(q.is_string() ? q.get<std::string>() : q.dump()));
    c.bits = doc.value("bits", 0u);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, std::string("std config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::invalid_config, std::string("std config: ") + e.what());
  }
  return c;
}

std::vector<mpq_class> std_radii(ProcessCache& cache, const StdRunConfig& config) {
  const auto grid = config.k_grid();
  if (config.radius_rule == RadiusRule::user_factors) {
    if (config.factors.size() != 1 && config.factors.size() != grid.size())
      throw Error(Errc::invalid_config, "radius factors must be a single value or one per k");
    for (const auto& q : config.factors)
      if (q <= 0 || q > 1) throw Error(Errc::invalid_config, "radius factors must lie in (0, 1]");
  }
  // Balls of radius above d/2 cover the whole torus; the cap keeps r_k <= eta_k.
  const mpq_class cap(static_cast<long>(cache.dim()), 2);
  std::vector<mpq_class> out;
  for (std::size_t q = 0; q < grid.size(); ++q) {
    mpq_class r = process::eta_schedule(cache, grid[q]);
    if (r > cap) r = cap;
    if (config.radius_rule == RadiusRule::user_factors)
      r *= config.factors.size() == 1 ? config.factors[0] : config.factors[q];
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

unsigned std_precision(ProcessCache& cache, const StdRunConfig& config) {
  const auto grid = config.k_grid();
  const std::size_t kmax = *std::max_element(grid.begin(), grid.end());
  const auto radii = std_radii(cache, config);
  unsigned radius_bits = 0;
  for (const auto& r : radii) radius_bits = std::max(radius_bits, group::ceil_log2(r.get_den()));
  const unsigned auto_bits = cache.required_bits(kmax, radius_bits + 32);
  if (config.bits == 0) return auto_bits;
  return config.bits;
}

namespace {

TorusPoint fixed_center(const StdRunConfig& config, std::size_t dim, unsigned bits) {
  if (config.center.size() != dim) throw Error(Errc::invalid_config, "fixed center needs one coordinate per dimension");
  return TorusPoint::from_rationals(bits, config.center);
}

std::vector<StdResultRow> run(ProcessCache& cache, const StdRunConfig& config, unsigned jobs, bool per_k) {
  const Observable f = Observable::parse(config.observable);
  if (f.dim() != cache.dim()) throw Error(Errc::dimension_mismatch, "observable and process dimensions differ");
  const auto grid = config.k_grid();
  const auto radii = std_radii(cache, config);
  const std::size_t kmax = *std::max_element(grid.begin(), grid.end());
  const unsigned bits = std_precision(cache, config);
  cache.extend_to(kmax);
  cache.check_precision(kmax, bits);
  const SeededStream master(config.seed);

  std::vector<StdResultRow> rows;
  if (!per_k) {
    TorusPoint center = config.center_mode == CenterMode::fixed
                            ? fixed_center(config, cache.dim(), bits)
                            : [&] {
                                SeededStream rng = master.derive("center");
                                return group::haar_sample(rng, cache.dim(), bits);
                              }();
    const auto orbit = cache.orbit(center, kmax);
    for (std::size_t q = 0; q < grid.size(); ++q)
      rows.push_back(ball_average(cache, orbit, f, grid[q], radii[q], config.samples,
                                  master.derive("ball").derive(grid[q]), jobs));
  } else {
    for (std::size_t q = 0; q < grid.size(); ++q) {
      SeededStream rng = master.derive("center").derive(grid[q]);
      const TorusPoint center = group::haar_sample(rng, cache.dim(), bits);
      const auto orbit = cache.orbit(center, grid[q]);
      rows.push_back(ball_average(cache, orbit, f, grid[q], radii[q], config.samples,
                                  master.derive("ball").derive(grid[q]), jobs));
    }
  }
  return rows;
}

}  // namespace

std::vector<StdResultRow> run_concentric(ProcessCache& cache, const StdRunConfig& config, unsigned jobs) {
  if (config.center_mode == CenterMode::per_k)
    throw Error(Errc::invalid_config, "concentric runs need a fixed or haar center");
  return run(cache, config, jobs, false);
}

std::vector<StdResultRow> run_noncentric(ProcessCache& cache, const StdRunConfig& config, unsigned jobs) {
  const auto grid = config.k_grid();
  const std::size_t kmax = *std::max_element(grid.begin(), grid.end());
  cache.extend_to(kmax);
  for (std::size_t n = 1; n <= kmax; ++n)
    if (cache.det_generator_at(n) == 0)
      throw Error(Errc::singular_matrix, "non-concentric runs need surjective T_n; det T_" + std::to_string(n) + " = 0");
  return run(cache, config, jobs, true);
}

void write_std_csv(std::ostream& os, const std::string& run_id, const std::vector<StdResultRow>& rows, bool header) {
  if (header) os << "run_id,k,r_k,alpha_re,alpha_im,time_avg_re,time_avg_im,target,mc_ci\n";
  for (const auto& r : rows) {
    os << run_id << ',' << r.k << ',' << format_pow2_scaled(r.r_k) << ',' << format_double(r.alpha_hat.real()) << ','
       << format_double(r.alpha_hat.imag()) << ',' << format_double(r.time_avg.real()) << ','
       << format_double(r.time_avg.imag()) << ',' << r.target.get_str() << ',' << format_double(r.mc_ci) << '\n';
  }
}

}  // namespace stdiff::spacetime
