#pragma once

#include <cstddef>
#include <vector>

#include "stdiff/group/torus.hpp"

namespace stdiff::weyl {

/// One-dimensional star discrepancy of the first k values, via sorting:
/// D*_k = max_i max(|i/k - u_(i)|, |(i-1)/k - u_(i)|).
double star_discrepancy_1d(std::vector<double> values, std::size_t k);
/// Same on torus points; throws unsupported_dim unless d = 1.
double star_discrepancy_1d(const std::vector<group::TorusPoint>& points, std::size_t k);

}  // namespace stdiff::weyl
