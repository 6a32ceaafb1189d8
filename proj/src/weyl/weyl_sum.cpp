#include "stdiff/weyl/weyl_sum.hpp"

#include <algorithm>
#include <cmath>

#include "stdiff/error.hpp"
#include "stdiff/format.hpp"
#include "stdiff/parallel.hpp"

namespace stdiff::weyl {

using nlohmann::json;

WeylSeries::WeylSeries(const ProcessCache& cache, TorusPoint x, std::vector<Character> chars)
    : cache_(&cache), start_(x), current_(x), scratch_(x.dim(), x.bits()), chars_(std::move(chars)) {
  if (x.dim() != cache.dim()) throw Error(Errc::dimension_mismatch, "point and process dimensions differ");
  for (const auto& c : chars_)
    if (c.dim() != x.dim()) throw Error(Errc::dimension_mismatch, "character and point dimensions differ");
  sums_.assign(chars_.size(), {std::complex<double>{}});
}

void WeylSeries::extend(std::size_t k) {
  if (k <= length_) return;
  cache_->check_precision_at(k, start_.bits());
  for (auto& s : sums_) s.reserve(k + 1);
  while (length_ < k) {
    if (length_ > 0) cache_->step(length_, current_, scratch_);
    for (std::size_t c = 0; c < chars_.size(); ++c) sums_[c].push_back(sums_[c].back() + chars_[c](current_));
    ++length_;
  }
}

std::complex<double> WeylSeries::partial_sum(std::size_t c, std::size_t k) const {
  if (k > length_) throw Error(Errc::out_of_range, "Weyl series not extended to k = " + std::to_string(k));
  return sums_.at(c)[k];
}

std::complex<double> WeylSeries::mean(std::size_t c, std::size_t k) const {
  if (k == 0) throw Error(Errc::out_of_range, "S_gamma(k, x) needs k >= 1");
  return partial_sum(c, k) / static_cast<double>(k);
}

std::complex<double> weyl_sum(ProcessCache& cache, const TorusPoint& x, const Character& chr, std::size_t k) {
  if (k == 0) throw Error(Errc::out_of_range, "weyl_sum needs k >= 1");
  cache.extend_to(k - 1);
  cache.check_precision(k, x.bits());
  WeylSeries series(cache, x, {chr});
  series.extend(k);
  return series.mean(0, k);
}

std::vector<VarianceEstimate> variance_identity_mc(ProcessCache& cache, const Character& chr,
                                                   const std::vector<std::size_t>& ks, std::size_t n_samples,
                                                   std::uint64_t seed, unsigned jobs) {
  if (ks.empty() || n_samples < 2) throw Error(Errc::out_of_range, "variance_identity_mc needs ks and N >= 2");
  const std::size_t kmax = *std::max_element(ks.begin(), ks.end());
  if (*std::min_element(ks.begin(), ks.end()) == 0) throw Error(Errc::out_of_range, "k must be >= 1");
  cache.extend_to(kmax);
  const unsigned bits = cache.required_bits(kmax);
  const SeededStream master(seed);

  // sq[s * ks.size() + j] = |S(ks[j], x_s)|^2
  std::vector<double> sq(n_samples * ks.size());
  const ProcessCache& frozen = cache;
  parallel_for(n_samples, jobs, [&](std::size_t s) {
    SeededStream rng = master.derive(s);
    WeylSeries series(frozen, group::haar_sample(rng, frozen.dim(), bits), {chr});
    series.extend(kmax);
    for (std::size_t j = 0; j < ks.size(); ++j) sq[s * ks.size() + j] = std::norm(series.mean(0, ks[j]));
  });

  std::vector<VarianceEstimate> out;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    double sum = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) sum += sq[s * ks.size() + j];
    const double mean = sum / static_cast<double>(n_samples);
    double var = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
      const double d = sq[s * ks.size() + j] - mean;
      var += d * d;
    }
    var /= static_cast<double>(n_samples - 1);
    VarianceEstimate e;
    e.k = ks[j];
    e.samples = n_samples;
    e.mean_sq = mean;
    e.sigma = std::sqrt(var);
    e.ci = 3.0 * e.sigma / std::sqrt(static_cast<double>(n_samples));
    e.expected = 1.0 / static_cast<double>(ks[j]);
    out.push_back(e);
  }
  return out;
}

bool subsequence_bound_check(const WeylSeries& series, std::size_t c, std::size_t k) {
  if (k == 0) throw Error(Errc::out_of_range, "subsequence bound needs k >= 1");
  std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(k)));
  while (root * root > k) --root;
  while ((root + 1) * (root + 1) <= k) ++root;
  const double lhs = std::abs(series.mean(c, k));
  const double rhs = std::abs(series.mean(c, root * root)) + 2.0 / std::sqrt(static_cast<double>(k));
  return lhs <= rhs + 1e-12;
}

double default_threshold(std::size_t k) { return 3.0 / std::sqrt(static_cast<double>(k)); }

UdReport ud_test(const WeylSeries& series, std::size_t k, double threshold) {
  UdReport report;
  report.k = k;
  report.threshold = threshold;
  for (std::size_t c = 0; c < series.characters().size(); ++c) {
    const auto s = series.mean(c, k);
    report.max_abs = std::max(report.max_abs, std::abs(s));
    report.per_char.push_back({series.characters()[c], s});
  }
  report.pass = report.max_abs <= threshold;
  return report;
}

UdReport ud_test(ProcessCache& cache, const TorusPoint& x, const std::vector<Character>& chars, std::size_t k,
                 double threshold) {
  if (k == 0) throw Error(Errc::out_of_range, "ud_test needs k >= 1");
  cache.extend_to(k - 1);
  cache.check_precision(k, x.bits());
  WeylSeries series(cache, x, chars);
  series.extend(k);
  return ud_test(series, k, threshold);
}

UdReport ud_test_points(const std::vector<TorusPoint>& points, const std::vector<Character>& chars, std::size_t k,
                        double threshold) {
  if (k == 0 || k > points.size()) throw Error(Errc::out_of_range, "ud_test_points needs 1 <= k <= #points");
  UdReport report;
  report.k = k;
  report.threshold = threshold;
  for (const auto& chr : chars) {
    std::complex<double> sum{};
    for (std::size_t i = 0; i < k; ++i) sum += chr(points[i]);
    const auto s = sum / static_cast<double>(k);
    report.max_abs = std::max(report.max_abs, std::abs(s));
    report.per_char.push_back({chr, s});
  }
  report.pass = report.max_abs <= threshold;
  return report;
}

json UdReport::to_json() const {
  json chars = json::array();
  for (const auto& r : per_char)
    chars.push_back({{"m", r.chr.label()}, {"re", r.value.real()}, {"im", r.value.imag()}, {"abs", std::abs(r.value)}});
  return json{{"k", k}, {"threshold", threshold}, {"max_abs", max_abs}, {"pass", pass}, {"per_char", chars}};
}

void write_weyl_csv(std::ostream& os, const std::string& run_id, const WeylSeries& series,
                    const std::vector<std::size_t>& ks, bool header) {
  if (header) os << "run_id,k,m_vector,re,im,abs\n";
  for (std::size_t k : ks)
    for (std::size_t c = 0; c < series.characters().size(); ++c) {
      const auto s = series.mean(c, k);
      os << run_id << ',' << k << ',' << series.characters()[c].label() << ',' << format_double(s.real()) << ','
         << format_double(s.imag()) << ',' << format_double(std::abs(s)) << '\n';
    }
}

}  // namespace stdiff::weyl
