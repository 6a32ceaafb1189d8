#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "stdiff/kernel/kernel_lattice.hpp"
#include "stdiff/process/process_cache.hpp"

namespace stdiff::kernel {

/// Constructive kernel point for x: y = A^{-1} floor(A x~) with x~ the
/// representative of x in [0,1)^d. Then rho(x, y) <= ||A^{-1} frac(A x~)||_1.
RationalPoint lemma_point(const IntMatrix& a, const RationalPoint& x);

struct ToralEstimateReport {
  std::size_t dim = 0;
  mpz_class det;
  double op_norm_inv = 0.0;
  double bound = 0.0;  // d^2 ||A^{-1}||_op
  std::size_t probes = 0;
  double worst_lemma_distance = 0.0;            // via lemma_point, exact then rounded
  std::optional<double> worst_nearest_distance;  // brute force over the kernel, when enumerable
  bool pass = false;

  nlohmann::json to_json() const;
};

/// For n_probes Haar points x, checks that some kernel point lies within
/// d^2 ||A^{-1}||_op of x under rho.
ToralEstimateReport toral_estimate_check(const IntMatrix& a, std::size_t n_probes, std::uint64_t seed,
                                         std::uint64_t cap = kKernelCap);

/// {m, det, op_norm_inv, covering_radius_interval, bound, pass} for ker A,
/// where pass means the covering radius upper end is within the bound (1e-8
/// slack for the singular-value tolerance).
nlohmann::json kernel_report(const IntMatrix& a, std::size_t m, double resolution = 1.0 / 64,
                             std::uint64_t seed = 0, unsigned jobs = 1);

struct DensityReport {
  std::size_t horizon = 0;
  std::vector<double> op_norms;     // ||Phi_n^{-1}||_op for n = 1..N
  std::vector<double> running_min;
  double head_min = 0.0;            // min over n < N/2
  double liminf_proxy = 0.0;        // min over n >= N/2
  double epsilon = 0.0;             // d^2 * min_n ||Phi_n^{-1}||_op
  /// Covering radius of the union of ker Phi_m (m <= N), which is ker Phi_N.
  double union_lower = 0.0;
  double union_upper = 0.0;
  std::optional<mpq_class> union_exact;
  std::size_t enumerated_m = 0;     // kernel actually enumerated (<= N)
  bool dense_at_epsilon = false;
  bool criterion_met = false;
  std::string verdict;

  nlohmann::json to_json() const;
};

/// Evidence for density of the union of kernels: the norms ||Phi_n^{-1}||
/// along the process, and the covering radius of the union at resolution
/// epsilon. If ker Phi_N exceeds the cap, the largest enumerable ker Phi_m
/// is used together with the d^2 ||A^{-1}|| bound as certificate.
DensityReport kernel_density_criterion(process::ProcessCache& cache, std::size_t horizon,
                                       double resolution = 1.0 / 64, std::uint64_t cap = kKernelCap,
                                       unsigned jobs = 1);

}  // namespace stdiff::kernel
