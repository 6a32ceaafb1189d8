#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "stdiff/generic/tent.hpp"
#include "stdiff/group/torus.hpp"
#include "stdiff/process/process_cache.hpp"
#include "stdiff/weyl/character.hpp"

namespace stdiff::spacetime {

using group::TorusPoint;
using process::ProcessCache;

enum class ObservableKind { character, tent, custom_lipschitz };

/// Continuous function on the torus with a known modulus of continuity.
///
/// custom_lipschitz is one-dimensional: the periodic piecewise-linear
/// interpolation of a table of values at the points j / n. A one-entry table
/// is a constant function.
class Observable {
 public:
  static Observable character(weyl::Character chr);
  static Observable tent(std::size_t dim, const mpq_class& delta);
  static Observable table(std::vector<mpq_class> values);
  static Observable constant(const mpq_class& value) { return table({value}); }

  /// "char:1", "char:1,-2", "tent:0.05", "tent:1/20@2" (width @ dimension),
  /// "const:1", "table:0,1,1/2".
  static Observable parse(const std::string& spec);
  std::string label() const { return label_; }

  ObservableKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  std::complex<double> operator()(const TorusPoint& x) const;

  /// omega(t) with |f(z) - f(w)| <= omega(rho(z, w)).
  double modulus(double t) const;
  double lipschitz() const { return lipschitz_; }
  /// Exact Haar integral (real for every kind here, 0 for characters).
  mpq_class integral() const;
  double sup_norm() const;

  const weyl::Character& chr() const { return chr_; }
  const generic::TentFunction& tent_function() const { return tent_; }

 private:
  Observable() : tent_(mpq_class(1, 4)) {}

  ObservableKind kind_ = ObservableKind::custom_lipschitz;
  std::size_t dim_ = 1;
  std::string label_;
  weyl::Character chr_;
  generic::TentFunction tent_;
  std::vector<mpq_class> table_;
  std::vector<double> table_d_;
  double lipschitz_ = 0.0;
};

/// (1/k) sum_{i<k} f(Phi_i x).
std::complex<double> ergodic_time_average(ProcessCache& cache, const TorusPoint& x, const Observable& f,
                                          std::size_t k);

/// Averages at every k in `ks` from one pass over the orbit, for several
/// observables: out[obs][index of k].
std::vector<std::vector<std::complex<double>>> ergodic_time_averages(ProcessCache& cache, const TorusPoint& x,
                                                                     const std::vector<Observable>& fs,
                                                                     const std::vector<std::size_t>& ks);

}  // namespace stdiff::spacetime
