#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "stdiff/generic/tent.hpp"
#include "stdiff/kernel/kernel_lattice.hpp"

namespace stdiff::generic {

/// Open rho-ball; a radius above d/2 stands for the whole torus.
struct TargetBall {
  RationalPoint center;
  mpq_class radius;

  static TargetBall whole(std::size_t dim);
  bool is_whole() const;
};

/// Kernel point a in ker Phi_m whose orbit sits at 0 from step m on, and a
/// radius w such that every x with rho(x, a) < w has Phi_j x in B(0, delta/2)
/// for m <= j < m + L. Over the horizon H = m + L at least L / H of the
/// orbit lies in the small ball.
struct MeagerWitness {
  std::size_t m = 0;
  RationalPoint a;
  std::size_t window = 0;   // L = max(N1, N2), N2 minimal with m / (m + N2) < eps
  std::size_t horizon = 0;  // H = m + L
  mpq_class w;              // power of two
  mpq_class delta;
  mpq_class epsilon;
  mpq_class certified_fraction;  // L / H, valid on the whole neighborhood
  mpq_class center_fraction;     // exact fraction for a itself
};

struct WindowOptions {
  std::size_t min_m = 1;
  std::size_t max_m = 256;
  std::uint64_t enumeration_cap = kernel::kKernelCap;
};

/// Point of ker Phi_m closest to c: closed form in d = 1, enumeration while
/// |det Phi_m| <= cap, and kernel::lemma_point beyond that.
RationalPoint nearest_kernel_point(process::ProcessCache& cache, std::size_t m, const RationalPoint& c,
                                   std::uint64_t cap = kernel::kKernelCap);

/// Smallest N2 with m / (m + N2) < eps.
std::size_t window_n2(std::size_t m, const mpq_class& eps);

/// Largest power of two <= q (q > 0).
mpq_class dyadic_floor(const mpq_class& q);

/// Searches m = min_m, min_m + 1, ... for a kernel point inside the target
/// ball and certifies its neighborhood. Throws witness_not_found.
MeagerWitness concentrated_window(process::ProcessCache& cache, const mpq_class& delta, const mpq_class& eps,
                                  std::size_t n1, const TargetBall& target, const WindowOptions& options = {});

/// The certified radius for given (m, L): (delta/2) / max_{l<L} ||Phi_{m+l}||_col.
mpq_class lipschitz_radius(process::ProcessCache& cache, std::size_t m, std::size_t window, const mpq_class& delta);

/// Exact fraction of j < H with Phi_j x in the closed ball B(0, r).
mpq_class exact_ball_fraction(process::ProcessCache& cache, const RationalPoint& x, const mpq_class& r,
                              std::size_t horizon);

struct ManceWitness {
  MeagerWitness window;
  TargetBall target;
  RationalPoint x;          // the neighborhood center
  mpq_class window_average; // exact tent average at window.horizon
};

/// delta = small_ball_delta(d, 1/2), eps = 1/3, N1 = K.
ManceWitness mance_witness(process::ProcessCache& cache, std::size_t k_min, const TargetBall& target,
                           const WindowOptions& options = {});

struct OscillationOptions {
  mpq_class tol{1, 32};
  std::size_t n_max = 4096;
  std::size_t attempts = 8;
  WindowOptions window;
};

struct OscillationWitness {
  MeagerWitness window;  // concentration at 0 around the kernel point a
  RationalPoint a0;      // Haar point standing in for a uniformly distributed orbit
  std::size_t p_index = 0;  // p in ker Phi_{p_index}
  RationalPoint p;
  RationalPoint x;       // a0 + p, within w of a
  std::size_t horizon_l = 0;
  std::size_t horizon_n = 0;
  mpq_class avg_l;
  mpq_class avg_n;
  mpq_class tol;
  std::size_t attempt = 0;
};

/// delta = small_ball_delta(d, 1/8), eps = 1/8, N1 = K. x = a0 + p has the
/// tail orbit of a0 (Phi_j p = 0 for j >= p_index) and starts inside the
/// window neighborhood, so its averages swing from >= 7/8 - tol to
/// <= 3/8 + tol. Attempt t draws a0 from stream (seed, "a0", t).
OscillationWitness oscillation_witness(process::ProcessCache& cache, std::size_t k_min, std::uint64_t seed,
                                       const OscillationOptions& options = {});

/// (1/k) sum_{i<k} f(Phi_i x) for a fixed-point start, in double.
double tent_time_average(process::ProcessCache& cache, const TorusPoint& x, const TentFunction& f, std::size_t k);

}  // namespace stdiff::generic
