#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "stdiff/group/int_matrix.hpp"
#include "stdiff/group/rational_point.hpp"

namespace stdiff::kernel {

using group::IntMatrix;
using group::RationalPoint;

inline constexpr std::uint64_t kKernelCap = 1'000'000;

/// The |det A| points of ker(x -> Ax mod Z^d), with exact rational
/// coordinates over the common denominator `den` (the largest Smith invariant).
struct KernelLattice {
  IntMatrix a;
  mpz_class det;
  std::vector<mpz_class> invariants;  // Smith diagonal
  mpz_class den;
  std::vector<RationalPoint> points;
};

/// Throws singular_matrix if det A = 0 and cap_exceeded if |det A| > cap.
KernelLattice kernel_points(const IntMatrix& a, std::uint64_t cap = kKernelCap);

/// True iff A p is an integer vector.
bool in_kernel(const IntMatrix& a, const RationalPoint& p);

/// Exact inverse over Q, row-major. Throws singular_matrix.
std::vector<mpq_class> rational_inverse(const IntMatrix& a);

/// ||A^{-1}||_op in the Euclidean norm: square root of the top eigenvalue of
/// A^{-T} A^{-1}, by power iteration from each basis vector and one mixed
/// rational start, stopping at 1e-12 relative change.
double inverse_op_norm(const IntMatrix& a, std::size_t max_iterations = 10000);

/// Covering radius of the kernel under rho as an interval [lower, upper].
/// In d = 1 it is exact (half the largest gap). Otherwise `lower` is the
/// largest distance found over a regular grid plus random probes and
/// `upper` adds the grid's own covering slack d / (2 g).
struct CoveringRadius {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  mpq_class exact_value;           // valid when exact
  std::vector<double> witness;     // a point realizing `lower`
  std::size_t grid_per_dim = 0;

  nlohmann::json to_json() const;
};

/// `resolution` sets the grid: g = ceil(1 / (2 resolution)) points per
/// dimension, lowered if |K| g^d would exceed `budget` distance evaluations.
CoveringRadius covering_radius(const KernelLattice& lattice, double resolution = 1.0 / 64, std::size_t probes = 1000,
                               std::uint64_t seed = 0, std::uint64_t budget = 200'000'000, unsigned jobs = 1);

/// Kernel coordinates as doubles, point after point.
std::vector<double> kernel_coordinates(const KernelLattice& lattice);
/// rho(x, K) for a double-coordinate point, against kernel_coordinates().
double distance_to_kernel(const std::vector<double>& flat, const std::vector<double>& x);
double distance_to_kernel(const KernelLattice& lattice, const std::vector<double>& x);

}  // namespace stdiff::kernel
