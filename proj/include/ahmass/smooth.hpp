#pragma once

// C-infinity cutoff primitives shared by the perturbation families, the
// interpolating graph and the gluing cutoffs.  All are scalar-generic so
// exact jets flow through them; the curvature pipeline needs two continuous
// derivatives everywhere, which polynomial blends do not give at the seams.

#include <cmath>

#include "ahmass/jets.hpp"

namespace ahmass {

inline double value_of(double x) { return x; }
inline double value_of(const Jet1& j) { return j.v; }
inline double value_of(const JetN& j) { return j.v; }

// exp(-1/t) continued by 0 for t <= 0; all derivatives vanish at t = 0.
template <class S>
S exp_bump(const S& t) {
  if (value_of(t) <= 0.0) return t * 0.0;
  return exp(-1.0 / t);
}

// Monotone C-infinity step: 0 for t <= 0, 1 for t >= 1.
template <class S>
S exp_step01(const S& t) {
  if (value_of(t) <= 0.0) return t * 0.0;
  if (value_of(t) >= 1.0) return t * 0.0 + 1.0;
  S a = exp_bump(t);
  S b = exp_bump(1.0 - t);
  return a / (a + b);
}

// Step from 1 to 0 across [lo, hi].
template <class S>
S exp_step_down(const S& x, double lo, double hi) {
  return 1.0 - exp_step01((x - lo) / (hi - lo));
}

// Bump supported on (lo, hi), equal to 1 on the middle half.
template <class S>
S exp_plateau(const S& x, double lo, double hi) {
  const double w = (hi - lo) / 4.0;
  return exp_step01((x - lo) / w) * exp_step01((hi - x) / w);
}

}  // namespace ahmass
