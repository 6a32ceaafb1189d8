#include "stdiff/spacetime/shift.hpp"

#include "stdiff/error.hpp"
#include "stdiff/parallel.hpp"
#include "stdiff/weyl/discrepancy.hpp"

namespace stdiff::spacetime {

GapSequence::GapSequence(std::vector<std::uint64_t> gaps) : gaps_(std::move(gaps)) {
  if (gaps_.empty()) throw Error(Errc::invalid_config, "gap sequence is empty");
  for (auto g : gaps_) {
    if (g == 0) throw Error(Errc::invalid_config, "gaps must be >= 1");
    period_sum_ += g;
  }
}

std::uint64_t GapSequence::gap(std::size_t n) const {
  if (n == 0) throw Error(Errc::out_of_range, "gaps are indexed from n = 1");
  return gaps_[(n - 1) % gaps_.size()];
}

std::uint64_t GapSequence::lambda(std::size_t n) const {
  const std::uint64_t periods = n / gaps_.size();
  std::uint64_t out = periods * period_sum_;
  for (std::size_t i = 0; i < n % gaps_.size(); ++i) out += gaps_[i];
  return out;
}

ShiftReport run_shift_ud(process::ProcessCache& cache, const GapSequence& gaps, std::size_t k, std::uint64_t seed,
                         long char_bound, unsigned jobs) {
  if (k == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  ShiftReport report;
  report.k = k;
  cache.extend_to(k - 1);
  // y_n needs Phi_n exactly, so the horizon is k - 1 generators.
  report.bits = cache.required_bits(k);
  const SeededStream g_stream = SeededStream(seed).derive("g");
  const std::size_t dim = cache.dim();
  report.points.resize(k);
  parallel_for(k, jobs, [&](std::size_t n) {
    SeededStream rng = g_stream.derive(gaps.lambda(n));
    const auto g = group::haar_sample(rng, dim, report.bits);
    report.points[n] = group::apply(cache.phi_at(n), g);
  });
  report.ud = weyl::ud_test_points(report.points, weyl::character_box(dim, char_bound), k, weyl::default_threshold(k));
  if (dim == 1) report.star_discrepancy = weyl::star_discrepancy_1d(report.points, k);
  return report;
}

nlohmann::json ShiftReport::to_json() const {
  nlohmann::json out{{"k", k}, {"bits", bits}, {"ud", ud.to_json()}};
  out["star_discrepancy"] = star_discrepancy ? nlohmann::json(*star_discrepancy) : nlohmann::json(nullptr);
  return out;
}

}  // namespace stdiff::spacetime
