#pragma once

#include <vector>

#include <gmpxx.h>

#include "stdiff/group/int_matrix.hpp"

namespace stdiff::kernel {

using group::IntMatrix;

/// P A Q = D with P, Q unimodular and D = diag(d_1, ..., d_n), d_i >= 0,
/// d_i | d_{i+1}.
struct SmithForm {
  IntMatrix d;
  IntMatrix p;
  IntMatrix q;

  std::vector<mpz_class> diagonal() const;
};

/// Elimination over Z, always pivoting on the entry of least absolute value.
SmithForm smith_normal_form(const IntMatrix& a);

}  // namespace stdiff::kernel
