#pragma once

// Independent reference computations used to freeze expected values. They
// share no code with the library: plain long double / int64 / Python-style
// rational arithmetic, brute force wherever possible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Exact rational with int64 parts (enough for the small oracles here).
struct Frac {
  std::int64_t p = 0, q = 1;
  Frac() = default;
  Frac(std::int64_t num, std::int64_t den = 1) : p(num), q(den) { norm(); }
  void norm() {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
  }
  Frac operator+(Frac o) const { return Frac(p * o.q + o.p * q, q * o.q); }
  Frac operator-(Frac o) const { return Frac(p * o.q - o.p * q, q * o.q); }
  Frac operator*(Frac o) const { return Frac(p * o.p, q * o.q); }
  Frac operator/(Frac o) const { return Frac(p * o.q, q * o.p); }
  bool operator==(const Frac&) const = default;
  bool operator<(Frac o) const { return p * o.q < o.p * q; }
  double d() const { return static_cast<double>(p) / static_cast<double>(q); }
};

/// Wrapped l1 distance, enumerating h in {-1, 0, 1} per coordinate.
inline double rho(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double best = 1e9;
    for (int h = -1; h <= 1; ++h) best = std::min(best, std::abs(x[j] - y[j] + h));
    s += best;
  }
  return s;
}

/// Cofactor-expansion determinant of a small integer matrix.
inline std::int64_t det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  std::int64_t s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return s;
}

/// Counts x in (1/D Z)^d / Z^d with A x in Z^d by brute force over residues,
/// D = |det A| (every kernel point has denominator dividing D).
inline std::int64_t kernel_count(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  const std::int64_t big = std::llabs(det(a));
  std::vector<std::int64_t> j(n, 0);
  std::int64_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < n; ++c) acc += a[r][c] * j[c];
      ok = acc % big == 0;
    }
    count += ok;
    std::size_t i = 0;
    while (i < n && ++j[i] >= big) j[i++] = 0;
    if (i == n) break;
  }
  return count;
}

/// Weyl mean of exp(2 pi i m x_i) over explicit phases x_i (long double).
inline std::complex<long double> weyl_mean(const std::vector<long double>& xs, long m) {
  std::complex<long double> s = 0;
  for (long double x : xs) {
    const long double a = 2 * std::numbers::pi_v<long double> * m * x;
    s += std::complex<long double>(std::cos(a), std::sin(a));
  }
  return s / static_cast<long double>(xs.size());
}

/// Midpoint quadrature of f on [lo, hi] with n cells.
template <class F>
double quad(F f, double lo, double hi, std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += f(lo + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

/// Tent value from the defining formula, in double.
inline double tent(double r, double delta) {
  if (r <= delta / 2) return 1.0;
  if (r <= delta) return 2.0 - 2.0 * r / delta;
  return 0.0;
}

/// One-dimensional star discrepancy by the sup over the empirical CDF,
/// evaluated at every jump from both sides (O(k^2) but independent).
inline double star_discrepancy(std::vector<double> u) {
  const double k = static_cast<double>(u.size());
  double best = 0;
  std::vector<double> cuts = u;
  cuts.push_back(1.0);
  for (double t : cuts) {
    double below = 0, at_or_below = 0;
    for (double v : u) {
      below += v < t;
      at_or_below += v <= t;
    }
    best = std::max(best, std::abs(below / k - t));
    best = std::max(best, std::abs(at_or_below / k - t));
  }
  return best;
}

}  // namespace oracle
