#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stdiff/generic/tent.hpp"
#include "stdiff/group/rational_point.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/kernel/kernel_lattice.hpp"
#include "stdiff/parallel.hpp"
#include "stdiff/process/process_cache.hpp"
#include "stdiff/spacetime/observable.hpp"
#include "stdiff/weyl/character.hpp"
#include "stdiff/weyl/discrepancy.hpp"

using namespace stdiff;
using group::IntMatrix;
using group::RationalPoint;
using group::TorusPoint;

namespace {

/// Hand-rolled generators over a fixed-seed engine.
struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
  std::size_t dim() { return static_cast<std::size_t>(integer(1, 3)); }

  IntMatrix matrix(std::size_t d, long bound, bool invertible = false) {
    for (;;) {
      IntMatrix m(d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = integer(-bound, bound);
      if (!invertible || m.det() != 0) return m;
    }
  }

  TorusPoint point(std::size_t d, unsigned bits) {
    std::vector<mpz_class> raw(d);
    for (auto& r : raw) {
      for (unsigned w = 0; w < bits; w += 64) {
        r <<= 64;
        r += mpz_class(std::to_string(eng()));
      }
    }
    return TorusPoint::from_raw(bits, raw);
  }

  RationalPoint rational(std::size_t d, long max_den) {
    std::vector<mpq_class> q;
    for (std::size_t j = 0; j < d; ++j) {
      const long den = integer(1, max_den);
      q.emplace_back(integer(0, den - 1), den);
      q.back().canonicalize();
    }
    return RationalPoint::from_rationals(q);
  }
};

constexpr int kCases = 300;

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("rho is a translation-invariant metric") {
  Gen g(1);
  for (int t = 0; t < kCases; ++t) {
    const auto d = g.dim();
    const auto x = g.point(d, 128), y = g.point(d, 128), z = g.point(d, 128);
    CHECK(rho(x, y) == rho(y, x));
    CHECK(rho(x, z) <= rho(x, y) + rho(y, z));
    CHECK(rho(x + z, y + z) == rho(x, y));
    CHECK(rho(x, x) == 0);
    CHECK(rho(x, y) <= mpq_class(static_cast<long>(d), 2));
    CHECK(rho_double(x, y) == doctest::Approx(oracle::rho(x.coords(), y.coords())).epsilon(1e-12));
  }
}

TEST_CASE("matrix action is a homomorphism and composes") {
  Gen g(2);
  for (int t = 0; t < kCases; ++t) {
    const auto d = g.dim();
    const auto a = g.matrix(d, 6), b = g.matrix(d, 6);
    const auto x = g.point(d, 128), y = g.point(d, 128);
    CHECK(group::apply(a, x + y) == group::apply(a, x) + group::apply(a, y));
    CHECK(group::apply(a, group::apply(b, x)) == group::apply(a * b, x));
    CHECK(rho(group::apply(a, x), group::apply(a, y)) <= mpq_class(a.col_norm()) * rho(x, y));
  }
}

TEST_CASE("rational and fixed-point actions agree on dyadic points") {
  Gen g(3);
  for (int t = 0; t < kCases; ++t) {
    const auto d = g.dim();
    const auto a = g.matrix(d, 9);
    const auto x = g.point(d, 64);
    const auto xr = RationalPoint::from_torus(x);
    const auto img = xr.apply(a);
    const auto fx = group::apply(a, x);
    for (std::size_t j = 0; j < d; ++j) CHECK(img.coord(j) == fx.exact(j));
  }
}

TEST_CASE("characters are multiplicative") {
  Gen g(4);
  for (int t = 0; t < kCases; ++t) {
    const auto d = g.dim();
    std::vector<mpz_class> m(d);
    for (auto& v : m) v = g.integer(-20, 20);
    if (std::all_of(m.begin(), m.end(), [](const mpz_class& v) { return v == 0; })) m[0] = 1;
    const weyl::Character chr(m);
    const auto x = g.point(d, 128), y = g.point(d, 128);
    const mpz_class lhs = chr.phase_raw(x + y);
    mpz_class rhs = chr.phase_raw(x) + chr.phase_raw(y);
    mpz_fdiv_r_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 128);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("kernels are subgroups") {
  Gen g(5);
  for (int t = 0; t < 60; ++t) {
    const auto d = g.dim();
    const auto a = g.matrix(d, 4, true);
    const auto lat = kernel::kernel_points(a);
    const auto& p = lat.points[static_cast<std::size_t>(g.integer(0, static_cast<long>(lat.points.size()) - 1))];
    const auto& q = lat.points[static_cast<std::size_t>(g.integer(0, static_cast<long>(lat.points.size()) - 1))];
    CHECK(kernel::in_kernel(a, p + q));
    CHECK(kernel::in_kernel(a, p - q));
    CHECK(p.apply(a).is_zero());
  }
}

TEST_CASE("cumulative products factor through tau") {
  Gen g(6);
  for (int t = 0; t < 20; ++t) {
    const auto d = g.dim();
    std::vector<IntMatrix> table;
    for (int i = 0; i < 3; ++i) table.push_back(g.matrix(d, 3));
    process::ProcessCache c(process::GeneratorRule::matrix_formula(table));
    const auto n = static_cast<std::size_t>(g.integer(0, 8));
    const auto m = static_cast<std::size_t>(g.integer(0, static_cast<long>(n)));
    CHECK(c.tau(n, m) * c.phi(m) == c.phi(n));
    CHECK(c.det_phi_at(n) == c.phi(n).det());
  }
}

TEST_CASE("observables respect their modulus of continuity") {
  Gen g(7);
  const std::vector<spacetime::Observable> fs1 = {spacetime::Observable::parse("char:3"),
                                                  spacetime::Observable::parse("tent:0.1"),
                                                  spacetime::Observable::parse("table:0,1,1/2,-1")};
  const std::vector<spacetime::Observable> fs2 = {spacetime::Observable::parse("char:1,-2"),
                                                  spacetime::Observable::parse("tent:1/8@2")};
  for (int t = 0; t < kCases; ++t) {
    for (const auto* fs : {&fs1, &fs2}) {
      const std::size_t d = (*fs)[0].dim();
      const auto x = g.point(d, 64);
      // Nearby pairs stress the Lipschitz constant more than far ones.
      const auto y = g.integer(0, 1) ? g.point(d, 64) : x + TorusPoint::from_raw(64, std::vector<mpz_class>(d, g.integer(0, 1L << 55)));
      const double r = rho_double(x, y);
      for (const auto& f : *fs) CHECK(std::abs(f(x) - f(y)) <= f.modulus(r) + 1e-12);
    }
  }
}

TEST_CASE("tent values stay in [0, 1] and are monotone in the distance") {
  Gen g(8);
  for (int t = 0; t < kCases; ++t) {
    const mpq_class delta(g.integer(1, 127), 256);
    const generic::TentFunction f(delta);
    const mpq_class r1(g.integer(0, 300), 512), r2(g.integer(0, 300), 512);
    const auto v1 = f.at_distance(r1), v2 = f.at_distance(r2);
    CHECK(v1 >= 0);
    CHECK(v1 <= 1);
    if (r1 <= r2) CHECK(v1 >= v2);
    CHECK(abs(v1 - v2) <= 2 / delta * abs(r1 - r2));
  }
}

TEST_CASE("star discrepancy matches the brute-force oracle") {
  Gen g(9);
  for (int t = 0; t < 40; ++t) {
    const auto k = static_cast<std::size_t>(g.integer(1, 200));
    std::vector<double> u(k);
    for (auto& v : u) v = std::uniform_real_distribution<double>(0, 1)(g.eng);
    if (g.integer(0, 3) == 0) u[0] = u[k - 1];  // ties
    CHECK(weyl::star_discrepancy_1d(u, k) == doctest::Approx(oracle::star_discrepancy(u)).epsilon(1e-12));
  }
}

TEST_CASE("ceil_log2 against the definition") {
  Gen g(10);
  for (int t = 0; t < kCases; ++t) {
    const long n = g.integer(1, 1L << 40);
    unsigned want = 0;
    while ((1L << want) < n) ++want;
    CHECK(group::ceil_log2(mpz_class(n)) == want);
  }
}

TEST_CASE("parallel_for visits every index once") {
  Gen g(11);
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<std::size_t>(g.integer(0, 500));
    const auto jobs = static_cast<unsigned>(g.integer(1, 16));
    std::vector<std::atomic<int>> hits(n);
    parallel_for(n, jobs, [&](std::size_t i) { hits[i]++; });
    for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 4, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("rational points round trip through strings and torus points") {
  Gen g(12);
  for (int t = 0; t < kCases; ++t) {
    const auto d = g.dim();
    const auto x = g.rational(d, 1000), y = g.rational(d, 1000);
    CHECK(RationalPoint::from_strings(x.to_strings()) == x);
    CHECK((x + y) - y == x);
    CHECK(rho(x, y) == rho(y, x));
    CHECK(rho(x, y) <= mpq_class(static_cast<long>(d), 2));
  }
}

}  // TEST_SUITE
