#include <doctest.h>

#include <json.hpp>

#include "stdiff/error.hpp"
#include "stdiff/group/finite_group.hpp"
#include "stdiff/process/difference_property.hpp"
#include "stdiff/process/process_cache.hpp"
#include "stdiff/process/rule.hpp"

using namespace stdiff;
using namespace stdiff::process;
using group::IntMatrix;

namespace {

GeneratorRule cantor(std::initializer_list<long> qs, bool repeat = false) {
  std::vector<mpz_class> m;
  for (long q : qs) m.emplace_back(q);
  return GeneratorRule::cantor(m, repeat);
}

}  // namespace

TEST_SUITE("process") {

TEST_CASE("cumulative products") {
  ProcessCache c(cantor({2, 3, 4}));
  CHECK(c.phi(0) == IntMatrix::identity(1));
  CHECK(c.phi(3) == IntMatrix{{24}});
  CHECK(c.det_phi_at(3) == 24);
  CHECK(c.lipschitz_at(2) == 3);
  CHECK_THROWS_AS(c.phi(4), Error);

  ProcessCache cat(GeneratorRule::constant(IntMatrix{{2, 1}, {1, 1}}));
  CHECK(cat.phi(2) == IntMatrix{{5, 3}, {3, 2}});
  CHECK(cat.tau(3, 1) == IntMatrix{{5, 3}, {3, 2}});
  CHECK(cat.tau(2, 2) == IntMatrix::identity(2));
}

TEST_CASE("tau matches Phi_s times the inverse of Phi_t on invertible rules") {
  ProcessCache c(GeneratorRule::matrix_formula({IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {0, 1}}}));
  for (std::size_t t = 0; t <= 4; ++t)
    for (std::size_t s = t; s <= 6; ++s) CHECK(c.tau(s, t) * c.phi(t) == c.phi(s));
}

TEST_CASE("rule forms") {
  const auto aff = GeneratorRule::cantor_affine(1, 1);
  CHECK(aff.generator(1) == IntMatrix{{2}});
  CHECK(aff.generator(5) == IntMatrix{{6}});
  CHECK_FALSE(aff.horizon().has_value());
  const auto rep = cantor({2, 3}, true);
  CHECK(rep.generator(3) == IntMatrix{{2}});
  const auto fin = cantor({2, 3});
  CHECK(fin.horizon() == 2u);
  CHECK_THROWS_AS(fin.generator(3), Error);
  const auto tab = GeneratorRule::matrix_formula({IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{3, 0}, {0, 2}}});
  CHECK(tab.generator(3) == IntMatrix{{2, 0}, {0, 3}});
  CHECK(tab.generator(4) == IntMatrix{{3, 0}, {0, 2}});
}

TEST_CASE("rule JSON round trip") {
  for (const auto& r : {GeneratorRule::doubling(), GeneratorRule::identity(2), cantor({2, 3, 5}),
                        GeneratorRule::cantor_affine(2, 3), cantor({4, 7}, true),
                        GeneratorRule::explicit_list({IntMatrix{{1, 2}, {3, 4}}}),
                        GeneratorRule::matrix_formula({IntMatrix{{2}}, IntMatrix{{3}}})}) {
    const auto back = GeneratorRule::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
    for (std::size_t n = 1; n <= (r.horizon() ? *r.horizon() : 6); ++n) CHECK(back.generator(n) == r.generator(n));
  }
  const auto big = GeneratorRule::from_json(nlohmann::json::parse(
      R"({"kind":"cantor_multipliers","dim":1,"multipliers":["123456789012345678901234567890"]})"));
  CHECK(big.generator(1)(0, 0) == mpz_class("123456789012345678901234567890"));
  CHECK_THROWS_AS(GeneratorRule::from_json(nlohmann::json::parse(R"({"kind":"nope"})")), Error);
  CHECK_THROWS_AS(GeneratorRule::from_json(nlohmann::json::parse(R"({"kind":"cantor_multipliers","multipliers":[1]})")),
                  Error);
}

TEST_CASE("Difference Property on Cantor multipliers") {
  ProcessCache c(GeneratorRule::cantor_affine(1, 1));
  const auto rep = difference_property_check(c, 20);
  CHECK(rep.ok);
  CHECK(rep.dets.size() == 20 * 19 / 2);
  CHECK(rep.closed_form_holds);
  // det(Phi_n - Phi_m) = (n+1)! - (m+1)!.
  mpz_class f3 = 24, f2 = 6;
  for (const auto& p : rep.dets)
    if (p.n == 3 && p.m == 2) CHECK(p.det == f3 - f2);
}

TEST_CASE("Difference Property fails for the identity") {
  ProcessCache c(GeneratorRule::identity(1));
  const auto rep = difference_property_check(c, 2);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failing_pair.has_value());
  CHECK(rep.failing_pair->first == 2);
  CHECK(rep.failing_pair->second == 1);
}

TEST_CASE("doubling determinants follow 2^m (2^(n-m) - 1)") {
  ProcessCache c(GeneratorRule::doubling());
  const auto rep = difference_property_check(c, 10, 4);
  CHECK(rep.ok);
  for (const auto& p : rep.dets) {
    const mpz_class want = (mpz_class(1) << p.m) * ((mpz_class(1) << (p.n - p.m)) - 1);
    CHECK(p.det == want);
  }
}

TEST_CASE("determinant list does not depend on the thread count") {
  ProcessCache a(GeneratorRule::constant(IntMatrix{{2, 1}, {1, 1}}));
  ProcessCache b(GeneratorRule::constant(IntMatrix{{2, 1}, {1, 1}}));
  const auto r1 = difference_property_check(a, 12, 1);
  const auto r8 = difference_property_check(b, 12, 8);
  CHECK(r1.to_json() == r8.to_json());
}

TEST_CASE("surjectivity fast paths") {
  ProcessCache c(cantor({2, 3, 2}));
  const auto s = surjectivity_fastpaths(c, 3);
  CHECK(s.all_generators_surjective);
  CHECK(s.commuting);

  ProcessCache diag(GeneratorRule::matrix_formula({IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{3, 0}, {0, 2}}}));
  const auto d = surjectivity_fastpaths(diag, 8);
  CHECK(d.commuting);
  CHECK(d.factorization_checked);
  CHECK(d.factorization_holds);

  ProcessCache nc(GeneratorRule::matrix_formula({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}}));
  const auto n = surjectivity_fastpaths(nc, 4);
  CHECK_FALSE(n.commuting);
  CHECK_FALSE(n.factorization_checked);

  ProcessCache sing(GeneratorRule::explicit_list({IntMatrix{{2}}, IntMatrix{{0}}}));
  const auto z = surjectivity_fastpaths(sing, 2);
  CHECK_FALSE(z.all_generators_surjective);
  CHECK(z.first_singular == 2u);
}

TEST_CASE("eta schedule") {
  ProcessCache d(GeneratorRule::doubling());
  CHECK(eta_schedule(d, 1) == 1);
  CHECK(eta_schedule(d, 3) == mpq_class(1, 12));
  ProcessCache c(cantor({2, 3, 4}));
  CHECK(c.ltilde(4) == 4);
  CHECK(eta_schedule(c, 4) == mpq_class(1, 256));
  ProcessCache id(GeneratorRule::identity(2));
  CHECK(eta_schedule(id, 5) == mpq_class(1, 5));
}

TEST_CASE("precision bookkeeping") {
  ProcessCache d(GeneratorRule::doubling());
  CHECK(d.horizon_bits(10) == 10);
  CHECK(d.required_bits(4096) == 4160);
  CHECK(d.required_bits(4096) % 64 == 0);
  CHECK_NOTHROW(d.check_precision(100, 128));
  CHECK_THROWS_AS(d.check_precision(200, 128), PrecisionExhausted);
  try {
    d.check_precision(200, 128);
  } catch (const PrecisionExhausted& e) {
    CHECK(e.required_bits() >= 199);
  }
  ProcessCache c(GeneratorRule::cantor_affine(1, 1));
  // ceil(log2(n + 1)) summed over n = 1..4: 1 + 2 + 2 + 3.
  CHECK(c.horizon_bits(4) == 8);
}

TEST_CASE("orbits are exact") {
  ProcessCache d(GeneratorRule::doubling());
  const auto x = group::TorusPoint::from_rationals(128, std::vector<mpq_class>{mpq_class(3, 16)});
  const auto orb = d.orbit(x, 5);
  CHECK(orb[1].exact(0) == mpq_class(3, 8));
  CHECK(orb[2].exact(0) == mpq_class(3, 4));
  CHECK(orb[3].exact(0) == mpq_class(1, 2));
  CHECK(orb[4].exact(0) == 0);
}

TEST_CASE("finite groups cannot carry the Difference Property") {
  const auto z2 = finite_dp_refute(group::FiniteAbelianGroup::parse("Z2"), 16);
  CHECK(z2.refuted);
  CHECK(z2.endomorphism_count == 2);
  CHECK(z2.refuted_at <= 3);
  CHECK(z2.max_survival == 2);
  CHECK(z2.worst_sequence.size() == z2.max_survival);

  const auto z3 = finite_dp_refute(group::FiniteAbelianGroup::parse("Z3"), 16);
  CHECK(z3.refuted);
  CHECK(z3.endomorphism_count == 3);
  CHECK(z3.refuted_at <= 4);

  const auto v4 = finite_dp_refute(group::FiniteAbelianGroup::parse("Z2xZ2"), 32);
  CHECK(v4.refuted);
  CHECK(v4.refuted_at <= 17);
  CHECK(v4.endomorphism_count == 16);
}

TEST_CASE("finite refutation respects the endomorphism cap") {
  CHECK_THROWS_AS(finite_dp_refute(group::FiniteAbelianGroup::parse("Z2xZ2"), 32, 8), Error);
}

}  // TEST_SUITE
