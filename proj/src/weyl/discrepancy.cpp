#include "stdiff/weyl/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "stdiff/error.hpp"

namespace stdiff::weyl {

double star_discrepancy_1d(std::vector<double> values, std::size_t k) {
  if (k == 0 || k > values.size()) throw Error(Errc::out_of_range, "star discrepancy needs 1 <= k <= #points");
  values.resize(k);
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(k);
  double worst = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double u = values[i - 1];
    worst = std::max({worst, std::abs(static_cast<double>(i) / n - u), std::abs(static_cast<double>(i - 1) / n - u)});
  }
  return worst;
}

double star_discrepancy_1d(const std::vector<group::TorusPoint>& points, std::size_t k) {
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != 1) throw Error(Errc::unsupported_dim, "star discrepancy is computed for d = 1 only");
    values.push_back(p.coord(0));
  }
  return star_discrepancy_1d(std::move(values), k);
}

}  // namespace stdiff::weyl
