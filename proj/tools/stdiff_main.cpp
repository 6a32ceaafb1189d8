// Command-line front end: turns flags (and an optional JSON config) into an
// experiment config and hands it to stdiff::cli::run_command.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stdiff/cli/commands.hpp"
#include "stdiff/error.hpp"
#include "stdiff/process/rule.hpp"

using nlohmann::json;

namespace {

struct Common {
  std::string rule_path;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> kmax;
  unsigned jobs = 1;
  std::string out = "stdiff-out";
  bool dry_run = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--rule", c.rule_path, "generator rule JSON file");
  sub->add_option("--config", c.config_path, "base config JSON; flags override its fields");
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--kmax", c.kmax, "largest time horizon k");
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output directory");
  sub->add_flag("--dry-run", c.dry_run, "validate, print precision and work estimate, compute nothing");
}

template <class T>
void set_if(json& cfg, const char* key, const std::optional<T>& v) {
  if (v) cfg[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stdiff: spatial-temporal differentiation experiments on tori"};
  app.require_subcommand(1);
  Common common;

  // dp-check
  auto* dp = app.add_subcommand("dp-check", "check the Difference Property or refute it on a finite group");
  add_common(dp, common);
  std::optional<std::size_t> dp_horizon;
  std::optional<std::string> dp_finite, dp_mode;
  std::optional<std::uint64_t> dp_cap;
  dp->add_option("--horizon", dp_horizon, "check pairs 0 < m < n <= N");
  dp->add_option("--finite", dp_finite, "finite group, e.g. Z2, Z3, Z2xZ2");
  dp->add_option("--mode", dp_mode, "check | refute");
  dp->add_option("--endo-cap", dp_cap, "largest admissible |End(A)|");

  // weyl
  auto* wy = app.add_subcommand("weyl", "Weyl sums: uniform distribution, variance identity, subsequence bound");
  add_common(wy, common);
  std::optional<std::string> wy_mode;
  std::optional<std::size_t> wy_points, wy_samples, wy_triples;
  std::optional<long> wy_chars;
  std::optional<double> wy_threshold, wy_fraction;
  std::optional<std::vector<std::size_t>> wy_ks;
  std::optional<std::vector<long>> wy_m;
  std::optional<unsigned> wy_bits;
  wy->add_option("--mode", wy_mode, "ud | variance | subsequence");
  wy->add_option("--points", wy_points, "Haar points for ud mode");
  wy->add_option("--samples", wy_samples, "Haar samples for variance mode");
  wy->add_option("--triples", wy_triples, "random (x, k) draws for subsequence mode");
  wy->add_option("--chars", wy_chars, "character box bound M");
  wy->add_option("--threshold", wy_threshold, "ud threshold (default 3/sqrt(k))");
  wy->add_option("--pass-fraction", wy_fraction, "required fraction of passing points");
  wy->add_option("--ks", wy_ks, "horizons for variance mode")->delimiter(',');
  wy->add_option("--m", wy_m, "character frequency")->delimiter(',');
  wy->add_option("--bits", wy_bits, "fixed-point precision B");

  // std
  auto* sd = app.add_subcommand("std", "spatial-temporal differentiation averages over shrinking balls");
  add_common(sd, common);
  std::optional<std::string> sd_f, sd_center_mode, sd_factor;
  std::optional<std::size_t> sd_samples;
  std::optional<std::vector<std::size_t>> sd_ks;
  std::optional<std::vector<std::string>> sd_center;
  sd->add_option("--f", sd_f, "observable: char:1 | tent:0.05 | const:1 | table:0,1");
  sd->add_option("--samples", sd_samples, "ball samples M per k");
  sd->add_option("--center", sd_center_mode, "haar | fixed | per_k");
  sd->add_option("--center-coords", sd_center, "fixed center coordinates")->delimiter(',');
  sd->add_option("--factor", sd_factor, "radius r_k = factor * eta_k, factor in (0, 1]");
  sd->add_option("--ks", sd_ks, "explicit k grid")->delimiter(',');

  // kernels
  auto* kn = app.add_subcommand("kernels", "kernel lattices, covering radii and the density criterion");
  add_common(kn, common);
  std::optional<std::size_t> kn_horizon, kn_probes;
  std::optional<double> kn_resolution;
  kn->add_option("--horizon", kn_horizon, "largest m");
  kn->add_option("--probes", kn_probes, "random probes for the toral estimate");
  kn->add_option("--resolution", kn_resolution, "covering-radius grid resolution");

  // meager
  auto* mg = app.add_subcommand("meager", "Mance and oscillation witnesses");
  add_common(mg, common);
  std::optional<std::string> mg_mode, mg_radius, mg_tol;
  std::optional<std::size_t> mg_k, mg_targets, mg_nmax, mg_baseline;
  std::optional<std::vector<std::string>> mg_center;
  bool mg_verify = false;
  mg->add_option("--mode", mg_mode, "mance | oscillation");
  mg->add_option("--K", mg_k, "smallest admissible window horizon");
  mg->add_option("--targets", mg_targets, "number of random target balls");
  mg->add_option("--radius", mg_radius, "target ball radius");
  mg->add_option("--center", mg_center, "target center coordinates")->delimiter(',');
  mg->add_option("--nmax", mg_nmax, "longest horizon for oscillation search");
  mg->add_option("--tol", mg_tol, "oscillation tolerance");
  mg->add_option("--baseline-k", mg_baseline, "Haar baseline horizon (0 to skip)");
  mg->add_flag("--verify", mg_verify, "re-certify every emitted witness");

  // shift
  auto* sh = app.add_subcommand("shift", "uniform distribution of the shift construction");
  add_common(sh, common);
  std::optional<std::vector<std::uint64_t>> sh_gaps;
  std::optional<long> sh_chars;
  std::optional<double> sh_disc;
  sh->add_option("--gaps", sh_gaps, "gap pattern l_1, l_2, ... (cycled)")->delimiter(',');
  sh->add_option("--chars", sh_chars, "character box bound M");
  sh->add_option("--max-discrepancy", sh_disc, "pass threshold on the star discrepancy (d = 1)");

  // verify-witness
  auto* vw = app.add_subcommand("verify-witness", "re-certify a witness certificate exactly");
  add_common(vw, common);
  std::string vw_cert;
  vw->add_option("certificate", vw_cert, "certificate JSON")->required();

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  json cfg = json::object();
  try {
    if (!common.config_path.empty()) {
      std::ifstream in(common.config_path);
      if (!in) throw stdiff::Error(stdiff::Errc::invalid_config, "cannot read " + common.config_path);
      cfg = json::parse(in);
    }
    if (!common.rule_path.empty()) cfg["rule"] = stdiff::process::GeneratorRule::load(common.rule_path).to_json();
  } catch (const stdiff::Error& e) {
    std::cerr << "stdiff: " << e.what() << '\n';
    return stdiff::cli::kExitBadConfig;
  } catch (const json::exception& e) {
    std::cerr << "stdiff: malformed config: " << e.what() << '\n';
    return stdiff::cli::kExitBadConfig;
  }
  cfg["command"] = name;
  set_if(cfg, "seed", common.seed);
  set_if(cfg, "kmax", common.kmax);

  if (name == "dp-check") {
    set_if(cfg, "horizon", dp_horizon);
    set_if(cfg, "finite", dp_finite);
    set_if(cfg, "mode", dp_mode);
    set_if(cfg, "endomorphism_cap", dp_cap);
  } else if (name == "weyl") {
    set_if(cfg, "mode", wy_mode);
    set_if(cfg, "points", wy_points);
    set_if(cfg, "samples", wy_samples);
    set_if(cfg, "triples", wy_triples);
    set_if(cfg, "char_bound", wy_chars);
    set_if(cfg, "threshold", wy_threshold);
    set_if(cfg, "pass_fraction", wy_fraction);
    set_if(cfg, "ks", wy_ks);
    set_if(cfg, "m", wy_m);
    set_if(cfg, "bits", wy_bits);
  } else if (name == "std") {
    set_if(cfg, "observable", sd_f);
    set_if(cfg, "samples", sd_samples);
    set_if(cfg, "center_mode", sd_center_mode);
    set_if(cfg, "center", sd_center);
    set_if(cfg, "ks", sd_ks);
    if (sd_factor) {
      cfg["radius_rule"] = "user_factors";
      cfg["factors"] = json::array({*sd_factor});
    }
  } else if (name == "kernels") {
    set_if(cfg, "horizon", kn_horizon);
    set_if(cfg, "probes", kn_probes);
    set_if(cfg, "resolution", kn_resolution);
  } else if (name == "meager") {
    set_if(cfg, "mode", mg_mode);
    set_if(cfg, "K", mg_k);
    set_if(cfg, "targets", mg_targets);
    set_if(cfg, "radius", mg_radius);
    set_if(cfg, "center", mg_center);
    set_if(cfg, "n_max", mg_nmax);
    set_if(cfg, "tol", mg_tol);
    set_if(cfg, "baseline_k", mg_baseline);
    if (mg_verify) cfg["verify"] = true;
  } else if (name == "shift") {
    set_if(cfg, "gaps", sh_gaps);
    set_if(cfg, "char_bound", sh_chars);
    set_if(cfg, "max_discrepancy", sh_disc);
  } else if (name == "verify-witness") {
    cfg["certificate"] = vw_cert;
  }

  stdiff::cli::CommandContext ctx;
  ctx.out_dir = common.out;
  ctx.jobs = common.jobs;
  ctx.dry_run = common.dry_run;
  try {
    ctx.precision_cap = stdiff::cli::precision_cap_from_env();
  } catch (const stdiff::Error& e) {
    std::cerr << "stdiff: " << e.what() << '\n';
    return stdiff::cli::kExitBadConfig;
  }
  return stdiff::cli::run_command(cfg, ctx).exit_code;
}
