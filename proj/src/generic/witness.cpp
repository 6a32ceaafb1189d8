#include "stdiff/generic/witness.hpp"

#include <algorithm>

#include "stdiff/error.hpp"
#include "stdiff/kernel/toral.hpp"

namespace stdiff::generic {

TargetBall TargetBall::whole(std::size_t dim) {
  return TargetBall{RationalPoint(dim, 1), mpq_class(static_cast<unsigned long>(dim))};
}

bool TargetBall::is_whole() const { return radius > mpq_class(static_cast<unsigned long>(center.dim()), 2); }

RationalPoint nearest_kernel_point(process::ProcessCache& cache, std::size_t m, const RationalPoint& c,
                                   std::uint64_t cap) {
  const std::size_t d = cache.dim();
  if (c.dim() != d) throw Error(Errc::dimension_mismatch, "target and process dimensions differ");
  if (m == 0) return RationalPoint(d, 1);
  const auto& a = cache.phi(m);
  if (cache.det_phi_at(m) == 0) throw Error(Errc::singular_matrix, "det Phi_" + std::to_string(m) + " = 0");
  if (d == 1) {
    // ker = {j / Q}; round c Q to the nearest integer
    const mpz_class q = abs(a(0, 0));
    mpz_class j;
    const mpz_class twice = 2 * c.num(0) * q + c.den();
    mpz_fdiv_q(j.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * c.den()).get_mpz_t());
    return RationalPoint::from_rationals({mpq_class(j, q)});
  }
  if (abs(cache.det_phi_at(m)) <= cap) {
    const auto lattice = kernel::kernel_points(a, cap);
    const RationalPoint* best = nullptr;
    mpq_class best_dist;
    for (const auto& p : lattice.points) {
      const mpq_class dist = group::rho(p, c);
      if (!best || dist < best_dist) {
        best = &p;
        best_dist = dist;
      }
    }
    return *best;
  }
  return kernel::lemma_point(a, c);
}

std::size_t window_n2(std::size_t m, const mpq_class& eps) {
  if (eps <= 0 || eps >= 1) throw Error(Errc::out_of_range, "window fraction eps must lie in (0, 1)");
  const mpq_class bound = mpq_class(static_cast<unsigned long>(m)) * (1 - eps) / eps;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
  return fl.get_ui() + 1;
}

mpq_class dyadic_floor(const mpq_class& q) {
  if (q <= 0) throw Error(Errc::degenerate_radius, "certified radius is not positive");
  // 2^e <= q < 2^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
  auto pow2 = [](long k) {
    mpq_class r = 1;
    if (k >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(k));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-k));
    return r;
  };
  while (pow2(e) > q) --e;
  while (pow2(e + 1) <= q) ++e;
  return pow2(e);
}

mpq_class lipschitz_radius(process::ProcessCache& cache, std::size_t m, std::size_t window, const mpq_class& delta) {
  if (window == 0) throw Error(Errc::out_of_range, "window must be >= 1");
  cache.extend_to(m + window - 1);
  mpz_class worst = 1;
  for (std::size_t l = 0; l < window; ++l) worst = std::max(worst, cache.phi_at(m + l).col_norm());
  mpq_class w = delta / 2 / worst;
  w.canonicalize();
  return w;
}

mpq_class exact_ball_fraction(process::ProcessCache& cache, const RationalPoint& x, const mpq_class& r,
                              std::size_t horizon) {
  if (horizon == 0) throw Error(Errc::out_of_range, "horizon must be >= 1");
  cache.extend_to(horizon - 1);
  RationalPoint cur = x;
  const mpz_class bound = r.get_num() * cur.den();
  unsigned long count = 0;
  for (std::size_t j = 0; j < horizon; ++j) {
    if (j > 0) cur.apply_in_place(cache.generator_at(j));
    if (cur.rho_to_zero_num() * r.get_den() <= bound) ++count;
  }
  mpq_class out(count, static_cast<unsigned long>(horizon));
  out.canonicalize();
  return out;
}

MeagerWitness concentrated_window(process::ProcessCache& cache, const mpq_class& delta, const mpq_class& eps,
                                  std::size_t n1, const TargetBall& target, const WindowOptions& options) {
  const bool whole = target.is_whole();
  for (std::size_t m = options.min_m; m <= options.max_m; ++m) {
    const RationalPoint a = nearest_kernel_point(cache, m, target.center, options.enumeration_cap);
    const mpq_class dist = group::rho(a, target.center);
    if (!whole && dist >= target.radius) continue;
    MeagerWitness wit;
    wit.m = m;
    wit.a = a;
    wit.delta = delta;
    wit.epsilon = eps;
    wit.window = std::max(n1, window_n2(m, eps));
    wit.horizon = m + wit.window;
    mpq_class w = lipschitz_radius(cache, m, wit.window, delta);
    if (!whole) w = std::min(w, mpq_class(target.radius - dist));
    wit.w = dyadic_floor(w);
    wit.certified_fraction = mpq_class(static_cast<unsigned long>(wit.window), static_cast<unsigned long>(wit.horizon));
    wit.certified_fraction.canonicalize();
    wit.center_fraction = exact_ball_fraction(cache, a, delta / 2, wit.horizon);
    return wit;
  }
  throw Error(Errc::witness_not_found,
              "no kernel point of Phi_m inside the target ball for m <= " + std::to_string(options.max_m));
}

ManceWitness mance_witness(process::ProcessCache& cache, std::size_t k_min, const TargetBall& target,
                           const WindowOptions& options) {
  if (k_min == 0) throw Error(Errc::out_of_range, "K must be >= 1");
  const std::size_t d = cache.dim();
  const mpq_class delta = small_ball_delta(d, mpq_class(1, 2));
  ManceWitness out;
  out.window = concentrated_window(cache, delta, mpq_class(1, 3), k_min, target, options);
  out.target = target;
  out.x = out.window.a;
  out.window_average = exact_tent_averages(cache, out.x, TentFunction(delta), {out.window.horizon})[0];
  if (out.window_average < mpq_class(2, 3))
    throw Error(Errc::witness_not_found, "window average fell below 2/3");
  return out;
}

OscillationWitness oscillation_witness(process::ProcessCache& cache, std::size_t k_min, std::uint64_t seed,
                                       const OscillationOptions& options) {
  if (k_min == 0) throw Error(Errc::out_of_range, "K must be >= 1");
  const std::size_t d = cache.dim();
  const mpq_class delta = small_ball_delta(d, mpq_class(1, 8));
  const TentFunction f(delta);
  const MeagerWitness win = concentrated_window(cache, delta, mpq_class(1, 8), k_min, TargetBall::whole(d),
                                                options.window);
  const std::size_t h = win.horizon;
  if (options.n_max <= h) throw Error(Errc::out_of_range, "n_max must exceed the window horizon");

  std::vector<std::size_t> horizons{h};
  for (std::size_t n = std::max<std::size_t>(h + 1, 256); n <= options.n_max; n *= 2) horizons.push_back(n);
  if (horizons.size() == 1) horizons.push_back(options.n_max);

  const unsigned bits = cache.required_bits(options.n_max);
  const SeededStream a0_stream = SeededStream(seed).derive("a0");
  const mpq_class high = mpq_class(7, 8) - options.tol;
  const mpq_class low = mpq_class(3, 8) + options.tol;
  for (std::size_t t = 0; t < options.attempts; ++t) {
    SeededStream rng = a0_stream.derive(t);
    const RationalPoint a0 = RationalPoint::from_torus(group::haar_sample(rng, d, bits));
    const RationalPoint shift = win.a - a0;
    std::optional<std::size_t> found;
    RationalPoint p;
    for (std::size_t m = 1; m <= options.window.max_m; ++m) {
      p = nearest_kernel_point(cache, m, shift, options.window.enumeration_cap);
      if (group::rho(p, shift) < win.w) {
        found = m;
        break;
      }
    }
    if (!found) continue;
    const RationalPoint x = a0 + p;
    const auto avgs = exact_tent_averages(cache, x, f, horizons);
    if (avgs[0] < high) continue;
    for (std::size_t i = 1; i < horizons.size(); ++i) {
      if (avgs[i] <= low) {
        OscillationWitness out;
        out.window = win;
        out.a0 = a0;
        out.p_index = *found;
        out.p = p;
        out.x = x;
        out.horizon_l = h;
        out.horizon_n = horizons[i];
        out.avg_l = avgs[0];
        out.avg_n = avgs[i];
        out.tol = options.tol;
        out.attempt = t;
        return out;
      }
    }
  }
  throw Error(Errc::witness_not_found, "no oscillation witness within the horizon budget");
}

double tent_time_average(process::ProcessCache& cache, const TorusPoint& x, const TentFunction& f, std::size_t k) {
  if (k == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  cache.extend_to(k - 1);
  cache.check_precision(k, x.bits());
  TorusPoint cur = x, scratch(x.dim(), x.bits());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0) cache.step(i, cur, scratch);
    sum += f(cur);
  }
  return sum / static_cast<double>(k);
}

}  // namespace stdiff::generic
