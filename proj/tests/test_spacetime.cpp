#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "stdiff/error.hpp"
#include "stdiff/process/difference_property.hpp"
#include "stdiff/spacetime/observable.hpp"
#include "stdiff/spacetime/shift.hpp"
#include "stdiff/spacetime/std_average.hpp"

using namespace stdiff;
using namespace stdiff::spacetime;
using group::TorusPoint;
using process::GeneratorRule;
using process::ProcessCache;

namespace {

TorusPoint q1(const mpq_class& v, unsigned bits) { return TorusPoint::from_rationals(bits, std::vector<mpq_class>{v}); }

}  // namespace

TEST_SUITE("spacetime") {

TEST_CASE("observable parsing and metadata") {
  const auto c = Observable::parse("char:1,-2");
  CHECK(c.kind() == ObservableKind::character);
  CHECK(c.dim() == 2);
  CHECK(c.integral() == 0);
  CHECK(c.lipschitz() == doctest::Approx(2 * std::numbers::pi * 3));
  CHECK(c.modulus(0.01) == doctest::Approx(0.06 * std::numbers::pi));
  const auto t = Observable::parse("tent:1/20@2");
  CHECK(t.kind() == ObservableKind::tent);
  CHECK(t.dim() == 2);
  CHECK(t.lipschitz() == doctest::Approx(40.0));
  CHECK(Observable::parse("const:1").integral() == 1);
  CHECK(Observable::parse("table:0,1").integral() == mpq_class(1, 2));
  CHECK(Observable::parse("table:0,1").sup_norm() == 1.0);
  CHECK_THROWS(Observable::parse("wave:3"));
  CHECK_THROWS(Observable::parse("char:"));
}

TEST_CASE("tent integral matches quadrature") {
  const auto t = Observable::parse("tent:0.05");
  CHECK(t.integral() == mpq_class(3, 40));
  const double q = oracle::quad([](double x) { return oracle::tent(std::abs(x), 0.05); }, -0.5, 0.5, 1000000);
  CHECK(std::abs(t.integral().get_d() - q) < 1e-9);
}

TEST_CASE("table observable interpolates") {
  const auto f = Observable::parse("table:0,1");
  CHECK(f(q1(mpq_class(1, 4), 64)).real() == doctest::Approx(0.5));
  CHECK(f(q1(mpq_class(1, 2), 64)).real() == doctest::Approx(1.0));
  CHECK(f(q1(mpq_class(7, 8), 64)).real() == doctest::Approx(0.25));
  CHECK(f.lipschitz() == doctest::Approx(2.0));
}

TEST_CASE("ergodic time averages") {
  ProcessCache d(GeneratorRule::doubling());
  CHECK(ergodic_time_average(d, TorusPoint(1, 128), Observable::parse("tent:0.05"), 10).real() == 1.0);
  const auto third = q1(mpq_class(1, 3), 128);
  CHECK(ergodic_time_average(d, third, Observable::parse("char:1"), 2).real() == doctest::Approx(-0.5));
  const auto half = q1(mpq_class(1, 2), 128);
  for (std::size_t k : {2u, 10u, 100u})
    CHECK(ergodic_time_average(d, half, Observable::parse("tent:0.05"), k).real() ==
          doctest::Approx(static_cast<double>(k - 1) / k));
  const auto many =
      ergodic_time_averages(d, third, {Observable::parse("char:1"), Observable::parse("const:1")}, {1, 2, 4});
  CHECK(many[1][2].real() == 1.0);
  CHECK(many[0][1].real() == doctest::Approx(-0.5));
}

TEST_CASE("constant observables average to one exactly") {
  ProcessCache d(GeneratorRule::doubling());
  SeededStream s(3);
  const auto center = group::haar_sample(s, 1, 256);
  const auto row = std_average(d, center, Observable::parse("const:1"), 8, mpq_class(1, 64), 16, s);
  CHECK(row.alpha_hat == std::complex<double>(1.0, 0.0));
  CHECK(row.time_avg == std::complex<double>(1.0, 0.0));
  CHECK(row.mc_ci == 0.0);
}

TEST_CASE("ball averages at k = 1 agree with quadrature") {
  ProcessCache d(GeneratorRule::doubling());
  const mpq_class r(1, 10);
  const double c = 0.3;
  const auto center = q1(mpq_class(3, 10), 128);
  const auto row = std_average(d, center, Observable::parse("char:1"), 1, r, 4096, SeededStream(12), 4);
  const double re = oracle::quad([&](double u) { return std::cos(2 * std::numbers::pi * (c + u)); }, -0.1, 0.1,
                                 100000) / 0.2;
  const double im = oracle::quad([&](double u) { return std::sin(2 * std::numbers::pi * (c + u)); }, -0.1, 0.1,
                                 100000) / 0.2;
  CHECK(std::abs(row.alpha_hat - std::complex<double>(re, im)) <= row.mc_ci);
}

TEST_CASE("Lipschitz chain along eta radii") {
  for (auto rule : {GeneratorRule::doubling(), GeneratorRule::cantor_affine(1, 1),
                    GeneratorRule::constant(group::IntMatrix{{2, 1}, {1, 1}})}) {
    ProcessCache c(rule);
    for (std::size_t k : {1u, 2u, 5u, 16u, 40u}) {
      const auto eta = process::eta_schedule(c, k);
      CHECK(propagated_radius(c, k, eta) <= mpq_class(1, static_cast<long>(k)));
    }
  }
}

TEST_CASE("concentric rows respect the lemma bound") {
  ProcessCache d(GeneratorRule::doubling());
  StdRunConfig cfg;
  cfg.k_max = 64;
  cfg.samples = 64;
  cfg.seed = 4;
  const auto rows = run_concentric(d, cfg, 4);
  REQUIRE(rows.size() == 7);
  const auto f = Observable::parse("char:1");
  for (const auto& r : rows) {
    CHECK(r.r_k <= process::eta_schedule(d, r.k));
    CHECK(std::abs(r.alpha_hat - r.time_avg) <= r.lemma_bound(f));
    CHECK(std::abs(r.alpha_hat) <= std::abs(r.time_avg) + 2 * std::numbers::pi / r.k + 3 * r.mc_ci);
  }
  CHECK(rows.front().r_k == mpq_class(1, 2));
}

TEST_CASE("frozen orbits do not converge") {
  ProcessCache id(GeneratorRule::identity(1));
  StdRunConfig cfg;
  cfg.k_max = 32;
  cfg.center_mode = CenterMode::fixed;
  cfg.center = {mpq_class(1, 4)};
  for (const auto& r : run_concentric(id, cfg)) {
    CHECK(std::abs(r.time_avg - std::complex<double>(0, 1)) < 1e-12);
    CHECK(std::abs(r.alpha_hat - std::complex<double>(0, 1)) < 2 * std::numbers::pi / r.k + r.mc_ci + 1e-9);
  }
}

TEST_CASE("per-k centers") {
  ProcessCache d(GeneratorRule::doubling());
  StdRunConfig cfg;
  cfg.observable = "tent:0.05";
  cfg.ks = {256};
  cfg.center_mode = CenterMode::per_k;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    const auto rows = run_noncentric(d, cfg);
    ok += std::abs(rows[0].alpha_hat.real() - 0.075) <= 0.05;
  }
  CHECK(ok >= 9);

  ProcessCache sing(GeneratorRule::explicit_list({group::IntMatrix{{2}}, group::IntMatrix{{0}}}));
  cfg.ks = {2};
  cfg.observable = "char:1";
  CHECK_THROWS_AS(run_noncentric(sing, cfg), Error);
}

TEST_CASE("run config") {
  StdRunConfig cfg;
  cfg.k_max = 100;
  CHECK(cfg.k_grid() == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64, 100});
  cfg.radius_rule = RadiusRule::user_factors;
  cfg.factors = {mpq_class(1, 2)};
  cfg.center_mode = CenterMode::fixed;
  cfg.center = {mpq_class(1, 3)};
  const auto back = StdRunConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
  ProcessCache d(GeneratorRule::doubling());
  const auto radii = std_radii(d, back);
  CHECK(radii[3] == process::eta_schedule(d, 8) / 2);
  cfg.factors = {mpq_class(3, 2)};
  CHECK_THROWS_AS(std_radii(d, cfg), Error);
  StdRunConfig small;
  small.samples = 4;
  CHECK_THROWS(run_concentric(d, small));
}

TEST_CASE("std csv layout") {
  ProcessCache d(GeneratorRule::doubling());
  StdRunConfig cfg;
  cfg.k_max = 4;
  std::ostringstream os;
  write_std_csv(os, "rid", run_concentric(d, cfg));
  const std::string s = os.str();
  CHECK(s.rfind("run_id,k,r_k,alpha_re,alpha_im,time_avg_re,time_avg_im,target,mc_ci\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}

TEST_CASE("gap sequences") {
  const GapSequence g({1, 3});
  CHECK(g.gap(1) == 1);
  CHECK(g.gap(2) == 3);
  CHECK(g.gap(3) == 1);
  CHECK(g.lambda(0) == 0);
  CHECK(g.lambda(3) == 5);
  CHECK(g.lambda(4) == 8);
  CHECK_THROWS_AS(GapSequence({0}), Error);
  CHECK_THROWS_AS(GapSequence({}), Error);
}

TEST_CASE("shift construction") {
  ProcessCache id(GeneratorRule::identity(1));
  const auto iid = run_shift_ud(id, GapSequence({1}), 10000, 1);
  REQUIRE(iid.star_discrepancy.has_value());
  CHECK(*iid.star_discrepancy <= 0.05);

  ProcessCache d(GeneratorRule::doubling());
  const auto a = run_shift_ud(d, GapSequence({1, 2}), 2000, 7, 8, 1);
  ProcessCache d2(GeneratorRule::doubling());
  const auto b = run_shift_ud(d2, GapSequence({1, 2}), 2000, 7, 8, 8);
  CHECK(a.star_discrepancy == b.star_discrepancy);
  CHECK(a.points == b.points);
  CHECK(a.to_json() == b.to_json());
  CHECK(*a.star_discrepancy <= 0.1);
}

}  // TEST_SUITE
