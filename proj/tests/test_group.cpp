#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"
#include "stdiff/error.hpp"
#include "stdiff/format.hpp"
#include "stdiff/group/finite_group.hpp"
#include "stdiff/group/int_matrix.hpp"
#include "stdiff/group/rational_point.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/rng.hpp"

using namespace stdiff;
using namespace stdiff::group;

namespace {

TorusPoint pt(std::vector<double> xs, unsigned bits = 64) { return TorusPoint::from_doubles(bits, xs); }

TorusPoint ptq(std::vector<mpq_class> xs, unsigned bits = 64) { return TorusPoint::from_rationals(bits, xs); }

}  // namespace

TEST_SUITE("group") {

TEST_CASE("rho on the circle and the 2-torus") {
  CHECK(rho(ptq({mpq_class(1, 4)}), ptq({mpq_class(1, 4)})) == 0);
  // 0.9 and 0.1 as exact dyadic-free rationals: the wrap distance is 1/5.
  CHECK(rho(ptq({mpq_class(9, 10)}, 256), ptq({mpq_class(1, 10)}, 256)).get_d() ==
        doctest::Approx(oracle::rho({0.9}, {0.1})).epsilon(1e-15));
  CHECK(oracle::rho({0.9}, {0.1}) == doctest::Approx(0.2));
  const auto x = ptq({mpq_class(1, 10), mpq_class(9, 10)}, 256);
  const auto y = ptq({mpq_class(2, 10), mpq_class(1, 10)}, 256);
  CHECK(rho(x, y).get_d() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rho_double(x, y) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(rho(x, y) == rho(y, x));
}

TEST_CASE("rho is exact on dyadic points") {
  const auto x = ptq({mpq_class(7, 8), mpq_class(1, 16)});
  const auto y = ptq({mpq_class(1, 8), mpq_class(15, 16)});
  CHECK(rho(x, y) == mpq_class(1, 4) + mpq_class(1, 8));
  CHECK(rho_to_zero_raw(ptq({mpq_class(3, 4)})) == mpz_class(1) << 62);
}

TEST_CASE("endomorphism action") {
  CHECK(apply(IntMatrix{{2}}, ptq({mpq_class(3, 4)})) == ptq({mpq_class(1, 2)}));
  const auto img = apply(IntMatrix{{2, 1}, {1, 1}}, ptq({mpq_class(1, 2), mpq_class(1, 2)}));
  CHECK(img == ptq({mpq_class(1, 2), mpq_class(0)}));
  const auto x = ptq({mpq_class(5, 16), mpq_class(3, 32)});
  CHECK(apply(IntMatrix::identity(2), x) == x);
  // Negative entries reduce into [0, 1).
  CHECK(apply(IntMatrix{{-1}}, ptq({mpq_class(1, 4)})) == ptq({mpq_class(3, 4)}));
}

TEST_CASE("torus point arithmetic and validation") {
  const auto a = ptq({mpq_class(3, 4)});
  const auto b = ptq({mpq_class(1, 2)});
  CHECK(a + b == ptq({mpq_class(1, 4)}));
  CHECK(b - a == ptq({mpq_class(3, 4)}));
  CHECK(-a == ptq({mpq_class(1, 4)}));
  CHECK_THROWS_AS(TorusPoint(1, 32), Error);
  CHECK_THROWS_AS(a + ptq({mpq_class(1, 2), mpq_class(1, 2)}), Error);
  CHECK(TorusPoint::from_raw(64, {mpz_class(-1)}).raw(0) == (mpz_class(1) << 64) - 1);
}

TEST_CASE("haar sampling is deterministic and uniform") {
  SeededStream a(42), b(42);
  CHECK(haar_sample(a, 2, 128) == haar_sample(b, 2, 128));

  SeededStream rng(7);
  const std::size_t n = 10000;
  double sum = 0;
  std::size_t quarter = 0;
  std::vector<double> bins(10, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = haar_sample(rng, 1, 64).coord(0);
    sum += u;
    quarter += u < 0.25;
    bins[static_cast<std::size_t>(u * 10)] += 1;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.02);
  CHECK(std::abs(static_cast<double>(quarter) / n - 0.25) < 0.02);
  double chi = 0;
  for (double c : bins) chi += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
  const boost::math::chi_squared dist(9);
  CHECK(chi < boost::math::quantile(dist, 0.999));
}

TEST_CASE("ball offsets stay inside the ball and are centred") {
  SeededStream rng(11);
  const mpq_class r(1, 10);
  const std::size_t n = 10000;
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = ball_offset_sample(rng, 1, r, 64);
    REQUIRE(u.l1_norm() < r);
    CHECK(rho(u.as_point(), TorusPoint(1, 64)) == u.l1_norm());
    sum += u.coords()[0];
  }
  CHECK(std::abs(sum / n) <= 3 * (0.1 / std::sqrt(3.0)) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("ball offsets in d = 2 follow the l1 volume profile") {
  // For the uniform law on an l1 ball, P(rho < r/2) = (1/2)^2.
  SeededStream rng(5);
  const mpq_class r(1, 8);
  const std::size_t n = 20000;
  std::size_t inner = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = ball_offset_sample(rng, 2, r, 64);
    REQUIRE(u.l1_norm() < r);
    inner += u.l1_norm() < r / 2;
  }
  const double p = static_cast<double>(inner) / n;
  CHECK(std::abs(p - 0.25) < 3 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("ball offset radius validation") {
  SeededStream rng(1);
  CHECK_THROWS_AS(ball_offset_sample(rng, 1, mpq_class(0), 64), Error);
  mpq_class tiny(1);
  mpq_div_2exp(tiny.get_mpq_t(), tiny.get_mpq_t(), 80);
  CHECK_THROWS_AS(ball_offset_sample(rng, 1, tiny, 64), Error);
}

TEST_CASE("ball volume") {
  CHECK(ball_volume(1, mpq_class(1, 20)) == mpq_class(1, 10));
  CHECK(ball_volume(3, mpq_class(1, 2)) == mpq_class(1, 6));
  // Grid quadrature at 2048^2 of the indicator |x| + |y| < 1/4 on [-1/2, 1/2)^2.
  const int g = 2048;
  std::size_t inside = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const double x = -0.5 + (i + 0.5) / g, y = -0.5 + (j + 0.5) / g;
      inside += std::abs(x) + std::abs(y) < 0.25;
    }
  CHECK(std::abs(ball_volume(2, mpq_class(1, 4)).get_d() - static_cast<double>(inside) / (g * g)) < 1e-3);
  // Monte Carlo for the whole-torus diamond in d = 3.
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const std::size_t n = 1000000;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < n; ++i) hit += std::abs(u(gen)) + std::abs(u(gen)) + std::abs(u(gen)) < 0.5;
  const double p = 1.0 / 6;
  CHECK(std::abs(static_cast<double>(hit) / n - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("integer matrices") {
  const IntMatrix a{{2, 1}, {1, 1}};
  CHECK(a * a == IntMatrix{{5, 3}, {3, 2}});
  CHECK(a.det() == 1);
  CHECK(a.col_norm() == 3);
  CHECK(IntMatrix{{1, -4}, {2, 3}}.col_norm() == 7);
  CHECK(a.transpose() == a);
  CHECK(IntMatrix::identity(3).det() == 1);
  CHECK(IntMatrix{{0, 1}, {1, 0}}.det() == -1);
  CHECK(ceil_log2(mpz_class(1)) == 0);
  CHECK(ceil_log2(mpz_class(2)) == 1);
  CHECK(ceil_log2(mpz_class(3)) == 2);
  CHECK(ceil_log2(mpz_class(1024)) == 10);
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<long> e(-5, 5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    std::vector<std::vector<std::int64_t>> raw(n, std::vector<std::int64_t>(n));
    IntMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = raw[r][c] = e(gen);
    CHECK(m.det() == mpz_class(static_cast<long>(oracle::det(raw))));
  }
}

TEST_CASE("rational points") {
  const auto x = RationalPoint::from_rationals({mpq_class(1, 3), mpq_class(5, 6)});
  CHECK(x.den() == 6);
  const auto y = x.apply(IntMatrix{{2, 0}, {0, 3}});
  CHECK(y == RationalPoint::from_rationals({mpq_class(2, 3), mpq_class(1, 2)}));
  CHECK((x - x).is_zero());
  CHECK(rho(x, RationalPoint::from_rationals({mpq_class(0), mpq_class(0)})) == mpq_class(1, 3) + mpq_class(1, 6));
  CHECK(RationalPoint::from_strings(x.to_strings()) == x);
  CHECK(RationalPoint::from_torus(ptq({mpq_class(3, 8)})).coord(0) == mpq_class(3, 8));
}

TEST_CASE("finite abelian groups") {
  const auto g = FiniteAbelianGroup::parse("Z2xZ3");
  CHECK(g.size() == 6);
  CHECK(g.add({1, 2}, {1, 2}) == Residues{0, 1});
  CHECK(g.index_of(g.element(5)) == 5);
  CHECK(count_endomorphisms(FiniteAbelianGroup::parse("Z2")) == 2);
  CHECK(count_endomorphisms(FiniteAbelianGroup::parse("Z3")) == 3);
  CHECK(count_endomorphisms(FiniteAbelianGroup::parse("Z2xZ2")) == 16);
  CHECK(enumerate_endomorphisms(FiniteAbelianGroup::parse("Z2xZ2"), 100).size() == 16);
  CHECK_THROWS_AS(enumerate_endomorphisms(FiniteAbelianGroup::parse("Z2xZ2"), 10), Error);
  const auto z4 = FiniteAbelianGroup::parse("Z4");
  CHECK(FiniteEndomorphism(std::vector<Residues>{Residues{3}}).is_surjective(z4));
  CHECK_FALSE(FiniteEndomorphism(std::vector<Residues>{Residues{2}}).is_surjective(z4));
}

TEST_CASE("seeded streams") {
  SeededStream s(1);
  const auto a = s.derive("ball").derive(3);
  const auto b = SeededStream(1).derive("ball").derive(3);
  CHECK(a.key() == b.key());
  CHECK(a.key() != SeededStream(1).derive("ball").derive(4).key());
  CHECK(SeededStream(1).derive("x").key() != SeededStream(1).derive("y").key());
  SeededStream c(5);
  for (int i = 0; i < 1000; ++i) CHECK(c.uniform_below(7) < 7);
  const mpz_class big = c.random_bits(300);
  CHECK(big >= 0);
  CHECK(mpz_sizeinbase(big.get_mpz_t(), 2) <= 300);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/20") == mpq_class(1, 20));
  CHECK(parse_rational("0.05") == mpq_class(1, 20));
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational(".5") == mpq_class(1, 2));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK(format_pow2_scaled(mpq_class(3, 16)) == "3*2^-4");
  CHECK(format_pow2_scaled(mpq_class(1, 6)) == "1/3*2^-1");
}

}  // TEST_SUITE
