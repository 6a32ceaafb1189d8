#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "stdiff/rng.hpp"
#include "stdiff/spacetime/observable.hpp"

namespace stdiff::spacetime {

/// One k of a spatial-temporal differentiation run.
struct StdResultRow {
  std::size_t k = 0;
  mpq_class r_k;
  std::complex<double> alpha_hat;  // ball average of the k-step time averages
  std::complex<double> time_avg;   // time average at the ball center
  mpq_class target;                // Haar integral of f
  double mc_ci = 0.0;              // 3 sigma_hat / sqrt(M)
  TorusPoint center;

  /// omega(1/k) + mc_ci.
  double lemma_bound(const Observable& f) const { return f.modulus(1.0 / static_cast<double>(k)) + mc_ci; }
};

/// Monte Carlo estimate of the average over B(center, r_k) of
/// (1/k) sum_{i<k} f(Phi_i .), from M uniform ball offsets. Sample s draws
/// its offset from stream.derive(s). Orbits use the split
/// Phi_i(center + u) = Phi_i center + Phi_i u.
StdResultRow std_average(ProcessCache& cache, const TorusPoint& center, const Observable& f, std::size_t k,
                         const mpq_class& r_k, std::size_t samples, const SeededStream& stream, unsigned jobs = 1);

/// r * max_{i<k} prod_{n<=i} L_n: how far apart two orbits that start
/// within r can drift before step k.
mpq_class propagated_radius(ProcessCache& cache, std::size_t k, const mpq_class& r);

enum class CenterMode { fixed, haar, per_k };
enum class RadiusRule { eta_schedule, user_factors };

struct StdRunConfig {
  std::string observable = "char:1";
  std::size_t k_max = 64;
  std::vector<std::size_t> ks;  // empty: dyadic grid 1, 2, 4, ..., k_max
  RadiusRule radius_rule = RadiusRule::eta_schedule;
  std::vector<mpq_class> factors;  // r_k = factor * eta_k; one per k or a single shared one
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  CenterMode center_mode = CenterMode::haar;
  std::vector<mpq_class> center;  // fixed mode only
  unsigned bits = 0;              // 0 selects the precision automatically

  std::vector<std::size_t> k_grid() const;
  nlohmann::json to_json() const;
  static StdRunConfig from_json(const nlohmann::json& doc);
};

/// Radii r_k for every k of the grid; each is at most min(eta_k, d/2).
std::vector<mpq_class> std_radii(ProcessCache& cache, const StdRunConfig& config);

/// Fixed-point precision for a run: the orbit horizon plus a 64-bit guard,
/// plus enough bits that the smallest ball spans at least 2^32 grid steps.
unsigned std_precision(ProcessCache& cache, const StdRunConfig& config);

/// Concentric balls B_k(x) around a single center (fixed or Haar).
std::vector<StdResultRow> run_concentric(ProcessCache& cache, const StdRunConfig& config, unsigned jobs = 1);
/// Independent Haar centers x_k per k. Requires det T_n != 0 up to k_max.
std::vector<StdResultRow> run_noncentric(ProcessCache& cache, const StdRunConfig& config, unsigned jobs = 1);

/// Columns: run_id,k,r_k,alpha_re,alpha_im,time_avg_re,time_avg_im,target,mc_ci.
void write_std_csv(std::ostream& os, const std::string& run_id, const std::vector<StdResultRow>& rows,
                   bool header = true);

}  // namespace stdiff::spacetime
