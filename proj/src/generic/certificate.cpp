#include "stdiff/generic/certificate.hpp"

#include "stdiff/error.hpp"
#include "stdiff/format.hpp"

namespace stdiff::generic {

using nlohmann::json;

namespace {

json point_json(const RationalPoint& p) { return p.to_strings(); }

RationalPoint point_from(const json& j) { return RationalPoint::from_strings(j.get<std::vector<std::string>>()); }

json window_json(const MeagerWitness& w) {
  return json{{"m", w.m},
              {"a", point_json(w.a)},
              {"L", w.window},
              {"H", w.horizon},
              {"w", w.w.get_str()},
              {"w_pow2", format_pow2_scaled(w.w)},
              {"delta", w.delta.get_str()},
              {"epsilon", w.epsilon.get_str()},
              {"certified_fraction", w.certified_fraction.get_str()},
              {"center_fraction", w.center_fraction.get_str()}};
}

class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    (cond ? result_.checks : result_.failures).push_back(what);
    result_.ok = result_.ok && cond;
  }
  VerifyResult take() { return std::move(result_); }

 private:
  VerifyResult result_;
};

/// Checks shared by both certificate kinds.
void verify_window(Checker& chk, process::ProcessCache& cache, const json& win, std::size_t k_min,
                   const mpq_class& expected_eps, const mpq_class& expected_ball_eps) {
  const std::size_t d = cache.dim();
  const std::size_t m = win.at("m").get<std::size_t>();
  const std::size_t l = win.at("L").get<std::size_t>();
  const std::size_t h = win.at("H").get<std::size_t>();
  const RationalPoint a = point_from(win.at("a"));
  const mpq_class w = parse_rational(win.at("w").get<std::string>());
  const mpq_class delta = parse_rational(win.at("delta").get<std::string>());
  const mpq_class eps = parse_rational(win.at("epsilon").get<std::string>());

  chk.expect(eps == expected_eps, "window epsilon is " + expected_eps.get_str());
  chk.expect(delta == small_ball_delta(d, expected_ball_eps), "delta is the small-ball width for " +
                                                                  expected_ball_eps.get_str());
  chk.expect(group::ball_volume(d, delta) < expected_ball_eps, "mu(B(0, delta)) < " + expected_ball_eps.get_str());
  chk.expect(h == m + l, "H = m + L");
  chk.expect(l >= k_min, "L >= K");
  chk.expect(mpq_class(static_cast<unsigned long>(m), static_cast<unsigned long>(h)) < eps, "m / (m + L) < eps");
  cache.extend_to(h);
  chk.expect(a.apply(cache.phi(m)).is_zero(), "a lies in ker Phi_m");
  chk.expect(w > 0 && w <= lipschitz_radius(cache, m, l, delta), "w <= (delta/2) / max_l ||Phi_{m+l}||_col");
  chk.expect(exact_ball_fraction(cache, a, delta / 2, h) >= 1 - eps, "center orbit fraction in B(0, delta/2) >= 1 - eps");
}

}  // namespace

json mance_certificate(const ManceWitness& wit, const process::GeneratorRule& rule, std::size_t k_min) {
  return json{{"kind", "mance"},
              {"rule", rule.to_json()},
              {"K", k_min},
              {"window", window_json(wit.window)},
              {"target", {{"center", point_json(wit.target.center)}, {"radius", wit.target.radius.get_str()}}},
              {"x", point_json(wit.x)},
              {"averages", {{"H", wit.window.horizon}, {"value", wit.window_average.get_str()}}}};
}

json oscillation_certificate(const OscillationWitness& wit, const process::GeneratorRule& rule, std::size_t k_min) {
  return json{{"kind", "oscillation"},
              {"rule", rule.to_json()},
              {"K", k_min},
              {"window", window_json(wit.window)},
              {"p_index", wit.p_index},
              {"p", point_json(wit.p)},
              {"x", point_json(wit.x)},
              {"tol", wit.tol.get_str()},
              {"L", wit.horizon_l},
              {"N", wit.horizon_n},
              {"averages", {{"L", wit.avg_l.get_str()}, {"N", wit.avg_n.get_str()}}}};
}

VerifyResult verify_certificate(const json& cert) {
  Checker chk;
  try {
    const std::string kind = cert.at("kind").get<std::string>();
    process::ProcessCache cache(process::GeneratorRule::from_json(cert.at("rule")));
    const std::size_t k_min = cert.at("K").get<std::size_t>();
    const json& win = cert.at("window");
    const RationalPoint a = point_from(win.at("a"));
    const RationalPoint x = point_from(cert.at("x"));
    const mpq_class w = parse_rational(win.at("w").get<std::string>());
    const mpq_class delta = parse_rational(win.at("delta").get<std::string>());
    const TentFunction f(delta);
    chk.expect(x.dim() == cache.dim(), "dimension matches the rule");

    if (kind == "mance") {
      verify_window(chk, cache, win, k_min, mpq_class(1, 3), mpq_class(1, 2));
      const RationalPoint c = point_from(cert.at("target").at("center"));
      const mpq_class radius = parse_rational(cert.at("target").at("radius").get<std::string>());
      const TargetBall target{c, radius};
      if (!target.is_whole()) chk.expect(group::rho(a, c) + w <= radius, "B(a, w) lies inside the target ball");
      chk.expect(group::rho(x, a) < w, "rho(x, a) < w");
      const std::size_t h = cert.at("averages").at("H").get<std::size_t>();
      const mpq_class claimed = parse_rational(cert.at("averages").at("value").get<std::string>());
      const mpq_class actual = exact_tent_averages(cache, x, f, {h})[0];
      chk.expect(actual == claimed, "tent average at H recomputes exactly");
      chk.expect(actual >= mpq_class(2, 3), "tent average at H >= 2/3");
      chk.expect(h >= k_min, "H >= K");
    } else if (kind == "oscillation") {
      verify_window(chk, cache, win, k_min, mpq_class(1, 8), mpq_class(1, 8));
      const std::size_t p_index = cert.at("p_index").get<std::size_t>();
      const RationalPoint p = point_from(cert.at("p"));
      chk.expect(p.apply(cache.phi(p_index)).is_zero(), "p lies in ker Phi_{p_index}");
      chk.expect(group::rho(x, a) < w, "rho(x, a) < w");
      const mpq_class tol = parse_rational(cert.at("tol").get<std::string>());
      const std::size_t l = cert.at("L").get<std::size_t>();
      const std::size_t n = cert.at("N").get<std::size_t>();
      chk.expect(l >= k_min && n > l, "K <= L < N");
      const auto avgs = exact_tent_averages(cache, x, f, {l, n});
      chk.expect(avgs[0] == parse_rational(cert.at("averages").at("L").get<std::string>()),
                 "average at L recomputes exactly");
      chk.expect(avgs[1] == parse_rational(cert.at("averages").at("N").get<std::string>()),
                 "average at N recomputes exactly");
      chk.expect(avgs[0] >= mpq_class(7, 8) - tol, "average at L >= 7/8 - tol");
      chk.expect(avgs[1] <= mpq_class(3, 8) + tol, "average at N <= 3/8 + tol");
      chk.expect(avgs[0] - avgs[1] > mpq_class(1, 2) - 2 * tol, "gap > 1/2 - 2 tol");
    } else {
      chk.expect(false, "unknown certificate kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    chk.expect(false, std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    chk.expect(false, std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    chk.expect(false, e.what());
  }
  return chk.take();
}

json VerifyResult::to_json() const { return json{{"ok", ok}, {"checks", checks}, {"failures", failures}}; }

}  // namespace stdiff::generic
