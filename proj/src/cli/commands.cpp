#include "stdiff/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stdiff/cli/manifest.hpp"
#include "stdiff/error.hpp"
#include "stdiff/format.hpp"
#include "stdiff/generic/certificate.hpp"
#include "stdiff/generic/witness.hpp"
#include "stdiff/group/finite_group.hpp"
#include "stdiff/kernel/toral.hpp"
#include "stdiff/parallel.hpp"
#include "stdiff/process/difference_property.hpp"
#include "stdiff/spacetime/shift.hpp"
#include "stdiff/spacetime/std_average.hpp"
#include "stdiff/weyl/weyl_sum.hpp"

namespace stdiff::cli {

using nlohmann::json;
using process::GeneratorRule;
using process::ProcessCache;

namespace {

/// Per-invocation state: where artifacts go and which were written.
class Run {
 public:
  Run(const CommandContext& ctx, std::string run_id) : ctx_(ctx), run_id_(std::move(run_id)) {}

  const CommandContext& ctx() const { return ctx_; }
  const std::string& id() const { return run_id_; }
  unsigned jobs() const { return std::max(1u, ctx_.jobs); }
  bool dry() const { return ctx_.dry_run; }

  void write_text(const std::string& name, const std::string& body) {
    std::ofstream out(ctx_.out_dir / name, std::ios::binary);
    if (!out) throw Error(Errc::invalid_config, "cannot write " + (ctx_.out_dir / name).string());
    out << body;
    artifacts_.push_back(name);
  }
  void write_json(const std::string& name, const json& doc) { write_text(name, doc.dump(2) + "\n"); }

  /// Enforces STDIFF_PRECISION_CAP on a derived precision.
  void check_bits(unsigned bits) const {
    if (ctx_.precision_cap && bits > *ctx_.precision_cap) throw PrecisionExhausted(bits, *ctx_.precision_cap);
  }

  std::vector<std::string>& artifacts() { return artifacts_; }

 private:
  const CommandContext& ctx_;
  std::string run_id_;
  std::vector<std::string> artifacts_;
};

template <class T>
T param(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::invalid_config, "parameter '" + key + "' has the wrong type");
  }
}

mpq_class rational_param(const json& cfg, const std::string& key, const std::string& fallback) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return parse_rational(fallback);
  const auto& v = cfg.at(key);
  try {
    return parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::invalid_config, "parameter '" + key + "': " + e.what());
  }
}

std::vector<mpq_class> rational_list(const json& cfg, const std::string& key) {
  std::vector<mpq_class> out;
  if (!cfg.contains(key)) return out;
  for (const auto& v : cfg.at(key)) out.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
  return out;
}

GeneratorRule rule_of(const json& cfg) {
  if (!cfg.contains("rule")) throw Error(Errc::invalid_config, "this command needs a generator rule (--rule)");
  return GeneratorRule::from_json(cfg.at("rule"));
}

std::vector<std::size_t> dyadic_grid(std::size_t kmax) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= kmax; k *= 2) ks.push_back(k);
  if (ks.back() != kmax) ks.push_back(kmax);
  return ks;
}

weyl::Character character_param(const json& cfg, std::size_t dim) {
  std::vector<long> m = param(cfg, "m", std::vector<long>(dim, 1));
  if (m.size() != dim) throw Error(Errc::invalid_config, "frequency vector 'm' must have one entry per dimension");
  return weyl::Character(std::vector<mpz_class>(m.begin(), m.end()));
}

/// Fixed-point precision for orbits of length k: auto, or a user value that
/// must cover the horizon.
unsigned orbit_bits(ProcessCache& cache, std::size_t k, const json& cfg) {
  const unsigned user = param(cfg, "bits", 0u);
  if (user == 0) return cache.required_bits(k);
  cache.check_precision(k, user);
  return user;
}

json dry_report(const Run& run, unsigned bits, double work) {
  return json{{"run_id", run.id()}, {"bits", bits}, {"work_estimate", work}};
}

// ---------------------------------------------------------------- dp-check

int cmd_dp_check(const json& cfg, Run& run, json& report) {
  const std::string finite = param(cfg, "finite", std::string());
  const std::string mode = param(cfg, "mode", std::string(finite.empty() ? "check" : "refute"));
  if (mode != "check" && mode != "refute") throw Error(Errc::invalid_config, "dp-check mode must be check or refute");
  if (!finite.empty()) {
    const auto group = group::FiniteAbelianGroup::parse(finite);
    const auto cap = param(cfg, "endomorphism_cap", process::kDefaultEndomorphismCap);
    const std::size_t horizon = param(cfg, "horizon", std::size_t{64});
    if (run.dry()) {
      report = dry_report(run, 0, static_cast<double>(group::count_endomorphisms(group)));
      return kExitOk;
    }
    const auto ref = process::finite_dp_refute(group, horizon, cap);
    report = ref.to_json();
    run.write_json("dp_report.json", report);
    return ref.refuted ? kExitOk : kExitPropertyFailed;
  }
  if (mode == "refute") throw Error(Errc::invalid_config, "refute mode needs --finite GROUP");
  ProcessCache cache(rule_of(cfg));
  const std::size_t horizon = param(cfg, "horizon", std::size_t{20});
  if (horizon < 2) throw Error(Errc::invalid_config, "horizon must be >= 2");
  if (run.dry()) {
    report = dry_report(run, 0, static_cast<double>(horizon * (horizon - 1) / 2));
    return kExitOk;
  }
  const auto dp = process::difference_property_check(cache, horizon, run.jobs());
  const auto surj = process::surjectivity_fastpaths(cache, horizon);
  report = json{{"difference_property", dp.to_json()}, {"surjectivity", surj.to_json()}};
  run.write_json("dp_report.json", report);
  return dp.ok ? kExitOk : kExitPropertyFailed;
}

// -------------------------------------------------------------------- weyl

int weyl_ud(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  const std::size_t k = param(cfg, "kmax", std::size_t{4096});
  const std::size_t points = param(cfg, "points", std::size_t{1});
  const long char_bound = param(cfg, "char_bound", 8L);
  const double threshold = param(cfg, "threshold", weyl::default_threshold(k));
  const double need = param(cfg, "pass_fraction", 0.95);
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  if (k == 0 || points == 0) throw Error(Errc::invalid_config, "kmax and points must be >= 1");
  const auto chars = weyl::character_box(cache.dim(), char_bound);
  cache.extend_to(k - 1);
  const unsigned bits = orbit_bits(cache, k, cfg);
  run.check_bits(bits);
  if (run.dry()) {
    report = dry_report(run, bits, static_cast<double>(points * k * chars.size()));
    return kExitOk;
  }
  const SeededStream master = SeededStream(seed).derive("x");
  std::vector<weyl::UdReport> per_point(points);
  std::string csv;
  parallel_for(points, run.jobs(), [&](std::size_t p) {
    SeededStream rng = master.derive(p);
    weyl::WeylSeries series(cache, group::haar_sample(rng, cache.dim(), bits), chars);
    series.extend(k);
    per_point[p] = weyl::ud_test(series, k, threshold);
    if (p == 0) {
      std::ostringstream os;
      weyl::write_weyl_csv(os, run.id(), series, dyadic_grid(k));
      csv = os.str();
    }
  });
  std::size_t passed = 0;
  json rows = json::array();
  for (std::size_t p = 0; p < points; ++p) {
    passed += per_point[p].pass ? 1 : 0;
    rows.push_back({{"index", p}, {"max_abs", per_point[p].max_abs}, {"pass", per_point[p].pass}});
  }
  const double fraction = static_cast<double>(passed) / static_cast<double>(points);
  report = json{{"mode", "ud"},       {"k", k},
                {"bits", bits},       {"threshold", threshold},
                {"characters", chars.size()}, {"points", rows},
                {"pass_count", passed}, {"pass_fraction", fraction},
                {"required_fraction", need}, {"pass", fraction >= need}};
  run.write_text("weyl.csv", csv);
  run.write_json("ud_report.json", report);
  return fraction >= need ? kExitOk : kExitPropertyFailed;
}

int weyl_variance(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  const auto ks = param(cfg, "ks", std::vector<std::size_t>{16, 64, 256});
  const std::size_t samples = param(cfg, "samples", std::size_t{20000});
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  if (ks.empty() || samples < 2) throw Error(Errc::invalid_config, "variance mode needs ks and samples >= 2");
  const auto chr = character_param(cfg, cache.dim());
  const std::size_t kmax = *std::max_element(ks.begin(), ks.end());
  const unsigned bits = cache.required_bits(kmax);
  run.check_bits(bits);
  if (run.dry()) {
    report = dry_report(run, bits, static_cast<double>(samples * kmax));
    return kExitOk;
  }
  const auto est = weyl::variance_identity_mc(cache, chr, ks, samples, seed, run.jobs());
  std::ostringstream csv;
  csv << "run_id,k,samples,mean_sq,sigma,ci,expected,within\n";
  json rows = json::array();
  bool all = true;
  for (const auto& e : est) {
    all = all && e.within_ci();
    csv << run.id() << ',' << e.k << ',' << e.samples << ',' << format_double(e.mean_sq) << ','
        << format_double(e.sigma) << ',' << format_double(e.ci) << ',' << format_double(e.expected) << ','
        << (e.within_ci() ? "true" : "false") << '\n';
    rows.push_back({{"k", e.k},
                    {"mean_sq", e.mean_sq},
                    {"sigma", e.sigma},
                    {"ci", e.ci},
                    {"expected", e.expected},
                    {"within_ci", e.within_ci()}});
  }
  report = json{{"mode", "variance"}, {"m", chr.label()}, {"bits", bits}, {"rows", rows}, {"pass", all}};
  run.write_text("variance.csv", csv.str());
  run.write_json("variance.json", report);
  return all ? kExitOk : kExitPropertyFailed;
}

int weyl_subsequence(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  const std::size_t triples = param(cfg, "triples", std::size_t{100});
  const std::size_t kmax = param(cfg, "kmax", std::size_t{10000});
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  if (kmax == 0) throw Error(Errc::invalid_config, "kmax must be >= 1");
  const auto chr = character_param(cfg, cache.dim());
  const SeededStream master = SeededStream(seed).derive("triple");
  std::vector<std::size_t> ks(triples);
  for (std::size_t t = 0; t < triples; ++t) {
    SeededStream rng = master.derive(t);
    ks[t] = 1 + rng.uniform_below(kmax);
  }
  const std::size_t top = triples ? *std::max_element(ks.begin(), ks.end()) : 1;
  cache.extend_to(top);
  const unsigned bits = cache.required_bits(top);
  run.check_bits(bits);
  if (run.dry()) {
    report = dry_report(run, bits, static_cast<double>(triples * kmax / 2));
    return kExitOk;
  }
  struct Row {
    double s_k, s_sq, bound;
    bool holds;
  };
  std::vector<Row> rows(triples);
  parallel_for(triples, run.jobs(), [&](std::size_t t) {
    SeededStream rng = master.derive(t).derive("x");
    const unsigned b = cache.horizon_bits_at(ks[t] - 1) + 64;
    weyl::WeylSeries series(cache, group::haar_sample(rng, cache.dim(), (b + 63) / 64 * 64), {chr});
    series.extend(ks[t]);
    const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(ks[t]))));
    const double bound = std::abs(series.mean(0, root * root)) + 2.0 / std::sqrt(static_cast<double>(ks[t]));
    rows[t] = {std::abs(series.mean(0, ks[t])), std::abs(series.mean(0, root * root)), bound,
               weyl::subsequence_bound_check(series, 0, ks[t])};
  });
  std::ostringstream csv;
  csv << "run_id,index,k,abs_s_k,abs_s_square,bound,holds\n";
  bool all = true;
  for (std::size_t t = 0; t < triples; ++t) {
    all = all && rows[t].holds;
    csv << run.id() << ',' << t << ',' << ks[t] << ',' << format_double(rows[t].s_k) << ','
        << format_double(rows[t].s_sq) << ',' << format_double(rows[t].bound) << ','
        << (rows[t].holds ? "true" : "false") << '\n';
  }
  report = json{{"mode", "subsequence"}, {"triples", triples}, {"pass", all}};
  run.write_text("subsequence.csv", csv.str());
  run.write_json("subsequence.json", report);
  return all ? kExitOk : kExitPropertyFailed;
}

int cmd_weyl(const json& cfg, Run& run, json& report) {
  const std::string mode = param(cfg, "mode", std::string("ud"));
  if (mode == "ud") return weyl_ud(cfg, run, report);
  if (mode == "variance") return weyl_variance(cfg, run, report);
  if (mode == "subsequence") return weyl_subsequence(cfg, run, report);
  throw Error(Errc::invalid_config, "weyl mode must be ud, variance or subsequence");
}

// --------------------------------------------------------------------- std

int cmd_std(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  json std_cfg = cfg;
  if (cfg.contains("kmax")) std_cfg["k_max"] = cfg.at("kmax");
  const auto config = spacetime::StdRunConfig::from_json(std_cfg);
  const auto f = spacetime::Observable::parse(config.observable);
  const unsigned bits = spacetime::std_precision(cache, config);
  run.check_bits(bits);
  const auto grid = config.k_grid();
  if (run.dry()) {
    double work = 0;
    for (auto k : grid) work += static_cast<double>(k * config.samples);
    report = dry_report(run, bits, work);
    return kExitOk;
  }
  const auto rows = config.center_mode == spacetime::CenterMode::per_k
                        ? spacetime::run_noncentric(cache, config, run.jobs())
                        : spacetime::run_concentric(cache, config, run.jobs());
  std::ostringstream csv;
  spacetime::write_std_csv(csv, run.id(), rows);
  bool all = true;
  json out_rows = json::array();
  for (const auto& r : rows) {
    const double deviation = std::abs(r.alpha_hat - r.time_avg);
    const double bound = r.lemma_bound(f);
    all = all && deviation <= bound;
    out_rows.push_back({{"k", r.k},
                        {"r_k", format_pow2_scaled(r.r_k)},
                        {"abs_alpha_hat", std::abs(r.alpha_hat)},
                        {"deviation", deviation},
                        {"lemma_bound", bound},
                        {"holds", deviation <= bound}});
  }
  report = json{{"config", config.to_json()}, {"bits", bits}, {"rows", out_rows}, {"all_rows_hold", all}};
  run.write_text("std.csv", csv.str());
  run.write_json("std_report.json", report);
  return all ? kExitOk : kExitPropertyFailed;
}

// ----------------------------------------------------------------- kernels

int cmd_kernels(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  const std::size_t horizon = param(cfg, "horizon", std::size_t{8});
  const double resolution = param(cfg, "resolution", 1.0 / 64);
  const std::size_t probes = param(cfg, "probes", std::size_t{200});
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  if (horizon < 2) throw Error(Errc::invalid_config, "horizon must be >= 2");
  cache.extend_to(horizon);
  if (run.dry()) {
    report = dry_report(run, 0, mpz_class(abs(cache.det_phi_at(horizon))).get_d());
    return kExitOk;
  }
  bool all = true;
  json reports = json::array();
  for (std::size_t m = 1; m <= horizon; ++m) {
    if (abs(cache.det_phi_at(m)) > kernel::kKernelCap) {
      reports.push_back({{"m", m}, {"det", cache.det_phi_at(m).get_str()}, {"skipped", "kernel cap exceeded"}});
      continue;
    }
    auto r = kernel::kernel_report(cache.phi_at(m), m, resolution, seed, run.jobs());
    all = all && r.at("pass").get<bool>();
    reports.push_back(std::move(r));
  }
  const auto toral = kernel::toral_estimate_check(cache.phi_at(horizon), probes, seed);
  const auto density = kernel::kernel_density_criterion(cache, horizon, resolution, kernel::kKernelCap, run.jobs());
  all = all && toral.pass;
  report = json{{"kernels", reports}, {"toral_estimate", toral.to_json()}, {"density", density.to_json()}, {"pass", all}};
  run.write_json("kernels.json", report);
  return all ? kExitOk : kExitPropertyFailed;
}

// ------------------------------------------------------------------ meager

bool verify_written(Run& run, const std::string& name, json& verdicts) {
  std::ifstream in(run.ctx().out_dir / name);
  const json cert = json::parse(in);
  const auto res = generic::verify_certificate(cert);
  verdicts.push_back({{"file", name}, {"ok", res.ok}, {"failures", res.failures}});
  return res.ok;
}

int cmd_meager(const json& cfg, Run& run, json& report) {
  const GeneratorRule rule = rule_of(cfg);
  ProcessCache cache(rule);
  const std::string mode = param(cfg, "mode", std::string("mance"));
  const std::size_t k_min = param(cfg, "K", std::size_t{8});
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  const bool verify = param(cfg, "verify", false);
  generic::WindowOptions win;
  win.min_m = param(cfg, "min_m", win.min_m);
  win.max_m = param(cfg, "max_m", win.max_m);
  const std::size_t d = cache.dim();

  if (mode == "mance") {
    const std::size_t targets = param(cfg, "targets", std::size_t{1});
    const mpq_class radius = rational_param(cfg, "radius", "1/20");
    const auto center = rational_list(cfg, "center");
    const std::size_t baseline_k = param(cfg, "baseline_k", std::size_t{4096});
    if (!center.empty() && center.size() != d) throw Error(Errc::invalid_config, "center needs one coordinate per dimension");
    const unsigned baseline_bits = baseline_k ? cache.required_bits(baseline_k) : 0;
    run.check_bits(baseline_bits);
    if (run.dry()) {
      report = dry_report(run, baseline_bits, static_cast<double>(targets * 64 + baseline_k));
      return kExitOk;
    }
    json witnesses = json::array(), verdicts = json::array();
    bool ok = true;
    for (std::size_t t = 0; t < targets; ++t) {
      generic::TargetBall target;
      if (!center.empty()) {
        target.center = group::RationalPoint::from_rationals(center);
      } else {
        SeededStream rng = SeededStream(seed).derive("target").derive(t);
        target.center = group::RationalPoint::from_torus(group::haar_sample(rng, d, group::kMinPrecisionBits));
      }
      target.radius = radius;
      const auto wit = generic::mance_witness(cache, k_min, target, win);
      const std::string name = "witness_" + std::to_string(t) + ".json";
      run.write_json(name, generic::mance_certificate(wit, rule, k_min));
      witnesses.push_back({{"file", name},
                           {"m", wit.window.m},
                           {"H", wit.window.horizon},
                           {"w", format_pow2_scaled(wit.window.w)},
                           {"window_average", wit.window_average.get_str()}});
      if (verify) ok = verify_written(run, name, verdicts) && ok;
    }
    json baseline = nullptr;
    if (baseline_k > 0) {
      SeededStream rng = SeededStream(seed).derive("baseline");
      const auto x = group::haar_sample(rng, d, baseline_bits);
      const generic::TentFunction f(generic::small_ball_delta(d, mpq_class(1, 2)));
      const double avg = generic::tent_time_average(cache, x, f, baseline_k);
      baseline = {{"k", baseline_k}, {"tent_average", avg}, {"below_half", avg < 0.5},
                  {"tent_integral", generic::tent_integral(f.delta(), d).get_str()}};
    }
    report = json{{"mode", "mance"}, {"K", k_min}, {"witnesses", witnesses}, {"baseline", baseline}};
    if (verify) report["verification"] = verdicts;
    run.write_json("meager.json", report);
    return ok ? kExitOk : kExitPropertyFailed;
  }
  if (mode == "oscillation") {
    generic::OscillationOptions opt;
    opt.window = win;
    opt.n_max = param(cfg, "n_max", opt.n_max);
    opt.attempts = param(cfg, "attempts", opt.attempts);
    opt.tol = rational_param(cfg, "tol", "1/32");
    const unsigned bits = cache.required_bits(opt.n_max);
    run.check_bits(bits);
    if (run.dry()) {
      report = dry_report(run, bits, static_cast<double>(opt.attempts * opt.n_max));
      return kExitOk;
    }
    const auto wit = generic::oscillation_witness(cache, k_min, seed, opt);
    run.write_json("witness_0.json", generic::oscillation_certificate(wit, rule, k_min));
    json verdicts = json::array();
    const bool ok = !verify || verify_written(run, "witness_0.json", verdicts);
    report = json{{"mode", "oscillation"},
                  {"K", k_min},
                  {"L", wit.horizon_l},
                  {"N", wit.horizon_n},
                  {"avg_L", wit.avg_l.get_str()},
                  {"avg_N", wit.avg_n.get_str()},
                  {"gap", format_double(mpq_class(wit.avg_l - wit.avg_n).get_d())},
                  {"attempt", wit.attempt},
                  {"file", "witness_0.json"}};
    if (verify) report["verification"] = verdicts;
    run.write_json("meager.json", report);
    return ok ? kExitOk : kExitPropertyFailed;
  }
  throw Error(Errc::invalid_config, "meager mode must be mance or oscillation");
}

// ------------------------------------------------------------------- shift

int cmd_shift(const json& cfg, Run& run, json& report) {
  ProcessCache cache(rule_of(cfg));
  const std::size_t k = param(cfg, "kmax", std::size_t{10000});
  const auto gaps = param(cfg, "gaps", std::vector<std::uint64_t>{1});
  const long char_bound = param(cfg, "char_bound", 8L);
  const double max_disc = param(cfg, "max_discrepancy", 0.05);
  const std::uint64_t seed = param(cfg, "seed", std::uint64_t{0});
  if (k == 0) throw Error(Errc::invalid_config, "kmax must be >= 1");
  const spacetime::GapSequence gap_seq(gaps);
  const unsigned bits = cache.required_bits(k);
  run.check_bits(bits);
  if (run.dry()) {
    report = dry_report(run, bits, static_cast<double>(k));
    return kExitOk;
  }
  const auto rep = spacetime::run_shift_ud(cache, gap_seq, k, seed, char_bound, run.jobs());
  std::ostringstream csv;
  csv << "run_id,n,lambda,y\n";
  for (std::size_t n = 0; n < rep.points.size(); ++n) {
    csv << run.id() << ',' << n << ',' << gap_seq.lambda(n) << ',';
    const auto ys = rep.points[n].coords();
    for (std::size_t j = 0; j < ys.size(); ++j) csv << (j ? ";" : "") << format_double(ys[j]);
    csv << '\n';
  }
  const bool pass = rep.star_discrepancy ? *rep.star_discrepancy <= max_disc : rep.ud.pass;
  report = rep.to_json();
  report["gaps"] = gaps;
  report["max_discrepancy"] = max_disc;
  report["pass"] = pass;
  run.write_text("shift.csv", csv.str());
  run.write_json("shift.json", report);
  return pass ? kExitOk : kExitPropertyFailed;
}

// ---------------------------------------------------------- verify-witness

int cmd_verify_witness(const json& cfg, Run& run, json& report) {
  const std::string path = param(cfg, "certificate", std::string());
  if (path.empty()) throw Error(Errc::invalid_config, "verify-witness needs a certificate path");
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_config, "cannot read certificate " + path);
  json cert;
  try {
    cert = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, std::string("certificate is not JSON: ") + e.what());
  }
  if (run.dry()) {
    report = dry_report(run, 0, 0);
    return kExitOk;
  }
  const auto res = generic::verify_certificate(cert);
  report = res.to_json();
  run.write_json("verify.json", report);
  return res.ok ? kExitOk : kExitPropertyFailed;
}

using Handler = int (*)(const json&, Run&, json&);

Handler handler_for(const std::string& name) {
  if (name == "dp-check") return cmd_dp_check;
  if (name == "weyl") return cmd_weyl;
  if (name == "std") return cmd_std;
  if (name == "kernels") return cmd_kernels;
  if (name == "meager") return cmd_meager;
  if (name == "shift") return cmd_shift;
  if (name == "verify-witness") return cmd_verify_witness;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"dp-check", "weyl", "std", "kernels", "meager", "shift", "verify-witness"};
  return names;
}

std::optional<unsigned> precision_cap_from_env() {
  const char* raw = std::getenv("STDIFF_PRECISION_CAP");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0') throw Error(Errc::invalid_config, "STDIFF_PRECISION_CAP must be a positive integer");
  return static_cast<unsigned>(v);
}

CommandResult run_command(const json& config, const CommandContext& ctx) {
  std::ostream& out = ctx.out ? *ctx.out : std::cout;
  std::ostream& log = ctx.log ? *ctx.log : std::cerr;
  CommandResult result;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (!config.is_object() || !config.contains("command"))
      throw Error(Errc::invalid_config, "config needs a \"command\" field");
    const std::string name = config.at("command").get<std::string>();
    const Handler handler = handler_for(name);
    if (!handler) throw Error(Errc::invalid_config, "unknown command '" + name + "'");
    result.run_id = run_id_for(config);
    Run run(ctx, result.run_id);
    if (!ctx.dry_run) {
      std::filesystem::create_directories(ctx.out_dir);
      run.write_json("config.json", config);
    }
    result.exit_code = handler(config, run, result.report);
    if (ctx.dry_run) {
      result.report["command"] = name;
      result.report["dry_run"] = true;
      out << result.report.dump(2) << '\n';
      return result;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.artifacts = run.artifacts();
    write_manifest(ctx.out_dir, result.run_id, result.artifacts, seconds);
    out << name << " run " << result.run_id << ": " << (result.exit_code == kExitOk ? "ok" : "property failed")
        << " (" << ctx.out_dir.string() << ")\n";
  } catch (const PrecisionExhausted& e) {
    log << "stdiff: " << e.what() << " (required B = " << e.required_bits() << ")\n";
    result.exit_code = kExitPrecision;
  } catch (const Error& e) {
    log << "stdiff: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::invalid_config:
      case Errc::rule_exhausted:
      case Errc::dimension_mismatch:
      case Errc::out_of_range:
      case Errc::unsupported_dim: result.exit_code = kExitBadConfig; break;
      default: result.exit_code = kExitPropertyFailed;
    }
  } catch (const json::exception& e) {
    log << "stdiff: malformed config: " << e.what() << '\n';
    result.exit_code = kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    log << "stdiff: malformed config: " << e.what() << '\n';
    result.exit_code = kExitBadConfig;
  }
  return result;
}

}  // namespace stdiff::cli
