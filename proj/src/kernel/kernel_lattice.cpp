#include "stdiff/kernel/kernel_lattice.hpp"

#include <algorithm>
#include <cmath>

#include "stdiff/error.hpp"
#include "stdiff/kernel/smith.hpp"
#include "stdiff/parallel.hpp"
#include "stdiff/rng.hpp"

namespace stdiff::kernel {

KernelLattice kernel_points(const IntMatrix& a, std::uint64_t cap) {
  KernelLattice out;
  out.a = a;
  out.det = a.det();
  if (out.det == 0) throw Error(Errc::singular_matrix, "kernel lattice needs det A != 0");
  if (abs(out.det) > cap)
    throw Error(Errc::cap_exceeded, "|det A| = " + mpz_class(abs(out.det)).get_str() + " exceeds the kernel cap");
  const SmithForm snf = smith_normal_form(a);
  out.invariants = snf.diagonal();
  const std::size_t n = a.dim();
  out.den = out.invariants.back();

  // x = Q (j_1 / d_1, ..., j_n / d_n); over den the numerators are Q (j_i den / d_i).
  std::vector<mpz_class> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = out.den / out.invariants[i];
  std::vector<unsigned long> j(n, 0);
  const std::uint64_t count = mpz_class(abs(out.det)).get_ui();
  out.points.reserve(count);
  for (;;) {
    std::vector<mpq_class> coords(n);
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += snf.q(r, i) * step[i] * j[i];
      coords[r] = mpq_class(acc, out.den);
    }
    out.points.push_back(RationalPoint::from_rationals(coords));
    std::size_t i = 0;
    while (i < n && ++j[i] >= out.invariants[i].get_ui()) j[i++] = 0;
    if (i == n) break;
  }
  return out;
}

bool in_kernel(const IntMatrix& a, const RationalPoint& p) {
  if (a.dim() != p.dim()) throw Error(Errc::dimension_mismatch, "kernel membership dimension");
  for (std::size_t r = 0; r < a.dim(); ++r) {
    mpz_class acc = 0;
    for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * p.num(c);
    if (!mpz_divisible_p(acc.get_mpz_t(), p.den().get_mpz_t())) return false;
  }
  return true;
}

std::vector<mpq_class> rational_inverse(const IntMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<mpq_class> m(n * 2 * n);
  auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return m[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = a(r, c);
    at(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && at(piv, c) == 0) ++piv;
    if (piv == n) throw Error(Errc::singular_matrix, "matrix is not invertible");
    if (piv != c)
      for (std::size_t k = 0; k < 2 * n; ++k) std::swap(at(piv, k), at(c, k));
    const mpq_class inv = 1 / at(c, c);
    for (std::size_t k = 0; k < 2 * n; ++k) at(c, k) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c) == 0) continue;
      const mpq_class f = at(r, c);
      for (std::size_t k = 0; k < 2 * n; ++k) at(r, k) -= f * at(c, k);
    }
  }
  std::vector<mpq_class> out(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out[r * n + c] = at(r, n + c);
      out[r * n + c].canonicalize();
    }
  return out;
}

namespace {

/// log2 |q| rounded down, or a very negative number for q = 0.
long log2_floor(const mpq_class& q) {
  if (q == 0) return -(1L << 40);
  return static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
}

}  // namespace

double inverse_op_norm(const IntMatrix& a, std::size_t max_iterations) {
  const std::size_t n = a.dim();
  const auto inv = rational_inverse(a);
  // M = A^{-T} A^{-1}, exact, then scaled by 2^-e into double range.
  std::vector<mpq_class> m(n * n);
  long top = -(1L << 40);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += inv[k * n + r] * inv[k * n + c];
      acc.canonicalize();
      top = std::max(top, log2_floor(acc));
      m[r * n + c] = acc;
    }
  const long shift = top;
  std::vector<double> md(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    mpq_class scaled = m[i];
    if (shift >= 0) mpq_div_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(shift));
    else mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(-shift));
    md[i] = scaled.get_d();
  }

  auto run = [&](std::vector<double> v) {
    double lambda = 0.0;
    std::vector<double> w(n);
    for (std::size_t it = 0; it < max_iterations; ++it) {
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm == 0.0) return 0.0;
      for (double& x : v) x /= norm;
      for (std::size_t r = 0; r < n; ++r) {
        w[r] = 0.0;
        for (std::size_t c = 0; c < n; ++c) w[r] += md[r * n + c] * v[c];
      }
      double rq = 0.0;
      for (std::size_t r = 0; r < n; ++r) rq += v[r] * w[r];
      const bool done = it > 0 && std::abs(rq - lambda) <= 1e-12 * std::abs(rq);
      lambda = rq;
      v = w;
      if (done) break;
    }
    return lambda;
  };

  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    best = std::max(best, run(e));
  }
  std::vector<double> mixed(n);
  for (std::size_t i = 0; i < n; ++i) mixed[i] = 1.0 / static_cast<double>(i + 2);
  best = std::max(best, run(mixed));
  return std::sqrt(std::ldexp(best, static_cast<int>(shift)));
}

std::vector<double> kernel_coordinates(const KernelLattice& lattice) {
  const std::size_t n = lattice.a.dim();
  std::vector<double> out;
  out.reserve(lattice.points.size() * n);
  for (const auto& p : lattice.points)
    for (std::size_t j = 0; j < n; ++j) out.push_back(mpq_class(p.num(j), p.den()).get_d());
  return out;
}

namespace {

double distance_flat(const std::vector<double>& flat, std::size_t n, const double* x) {
  double best = static_cast<double>(n);
  for (std::size_t i = 0; i < flat.size(); i += n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n && acc < best; ++j) {
      double t = std::abs(x[j] - flat[i + j]);
      acc += std::min(t, 1.0 - t);
    }
    best = std::min(best, acc);
  }
  return best;
}

}  // namespace

double distance_to_kernel(const std::vector<double>& flat, const std::vector<double>& x) {
  return distance_flat(flat, x.size(), x.data());
}

double distance_to_kernel(const KernelLattice& lattice, const std::vector<double>& x) {
  if (x.size() != lattice.a.dim()) throw Error(Errc::dimension_mismatch, "probe dimension");
  return distance_flat(kernel_coordinates(lattice), x.size(), x.data());
}

CoveringRadius covering_radius(const KernelLattice& lattice, double resolution, std::size_t probes,
                               std::uint64_t seed, std::uint64_t budget, unsigned jobs) {
  const std::size_t n = lattice.a.dim();
  CoveringRadius out;
  if (n == 1) {
    std::vector<mpq_class> xs;
    for (const auto& p : lattice.points) xs.push_back(p.coord(0));
    std::sort(xs.begin(), xs.end());
    mpq_class best_gap = xs.front() + 1 - xs.back();
    mpq_class best_mid = xs.back() + best_gap / 2;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const mpq_class gap = xs[i] - xs[i - 1];
      if (gap > best_gap) {
        best_gap = gap;
        best_mid = xs[i - 1] + gap / 2;
      }
    }
    if (best_mid >= 1) best_mid -= 1;
    out.exact = true;
    out.exact_value = best_gap / 2;
    out.exact_value.canonicalize();
    out.lower = out.upper = out.exact_value.get_d();
    out.witness = {best_mid.get_d()};
    out.grid_per_dim = 0;
    return out;
  }

  if (!(resolution > 0.0)) throw Error(Errc::out_of_range, "resolution must be positive");
  std::size_t g = static_cast<std::size_t>(std::ceil(1.0 / (2.0 * resolution)));
  g = std::max<std::size_t>(g, 2);
  auto cost = [&](std::size_t gg) {
    double c = static_cast<double>(lattice.points.size());
    for (std::size_t j = 0; j < n; ++j) c *= static_cast<double>(gg);
    return c;
  };
  while (g > 2 && cost(g) > static_cast<double>(budget)) --g;
  out.grid_per_dim = g;

  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= g;
  const auto flat = kernel_coordinates(lattice);
  // Grid points sit at cell centers (i + 1/2) / g.
  std::vector<double> grid_best(total);
  parallel_for(total, jobs, [&](std::size_t idx) {
    std::vector<double> x(n);
    std::size_t rem = idx;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = (static_cast<double>(rem % g) + 0.5) / static_cast<double>(g);
      rem /= g;
    }
    grid_best[idx] = distance_flat(flat, n, x.data());
  });
  std::vector<double> probe_pts(probes * n);
  SeededStream rng = SeededStream(seed).derive("cover");
  for (auto& v : probe_pts) v = rng.next_double();
  std::vector<double> probe_best(probes);
  parallel_for(probes, jobs, [&](std::size_t i) { probe_best[i] = distance_flat(flat, n, &probe_pts[i * n]); });

  double grid_max = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < total; ++i)
    if (grid_best[i] > grid_max) {
      grid_max = grid_best[i];
      arg = i;
    }
  out.lower = grid_max;
  out.witness.resize(n);
  {
    std::size_t rem = arg;
    for (std::size_t j = 0; j < n; ++j) {
      out.witness[j] = (static_cast<double>(rem % g) + 0.5) / static_cast<double>(g);
      rem /= g;
    }
  }
  for (std::size_t i = 0; i < probes; ++i)
    if (probe_best[i] > out.lower) {
      out.lower = probe_best[i];
      out.witness.assign(probe_pts.begin() + static_cast<long>(i * n), probe_pts.begin() + static_cast<long>((i + 1) * n));
    }
  // every point lies within l1 distance n / (2g) of a cell center
  out.upper = std::min(grid_max + static_cast<double>(n) / (2.0 * static_cast<double>(g)), static_cast<double>(n) / 2.0);
  return out;
}

nlohmann::json CoveringRadius::to_json() const {
  nlohmann::json j{{"lower", lower}, {"upper", upper}, {"exact", exact}, {"witness", witness}};
  if (exact) j["exact_value"] = exact_value.get_str();
  if (!exact) j["grid_per_dim"] = grid_per_dim;
  return j;
}

}  // namespace stdiff::kernel
