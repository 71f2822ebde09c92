#pragma once

// Charts of hyperbolic space and the transition maps between them.
//
//   HalfSpace: (w^1..w^{n-1}, z), z > 0, metric (dz^2 + sum dw_i^2)/z^2
//   Ball:      x in R^n, |x| < 1,  metric 4 delta / (1-|x|^2)^2
//   Polar:     (r, theta),  r > 0, metric dr^2/(1+r^2) + r^2 h(theta)
//   Euclidean: plain R^n coordinates (graph hypersurfaces, test metrics)
//
// Transition conventions.  HalfSpace <-> Ball composes the inversion centered
// at -e_n of radius sqrt(2) with a flip of the last ball coordinate; with this
// choice the static potentials transported from the half-space chart land
// exactly on ((1+|x|^2), 2x^1, ..., 2x^n)/(1-|x|^2).  The ball point e_n is
// the deleted boundary point of the half-space chart.  Polar angles follow
// the "last coordinate = cos(theta_1)" recursion, so for n = 3 a unit vector
// reads (sin t1 sin t2, sin t1 cos t2, cos t1).

#include <Eigen/Dense>

#include "ahmass/errors.hpp"
#include "ahmass/jets.hpp"

#include <cmath>
#include <vector>

namespace ahmass {

enum class Chart { HalfSpace, Ball, Polar, Euclidean };

const char* chart_name(Chart c);

struct ChartPoint {
  Chart chart = Chart::Euclidean;
  Eigen::VectorXd x;

  int dim() const { return static_cast<int>(x.size()); }
};

ChartPoint make_halfspace(const Eigen::VectorXd& wz);
ChartPoint make_ball(const Eigen::VectorXd& x);
ChartPoint make_polar(const Eigen::VectorXd& rtheta);  // r = 0 allowed as origin marker
ChartPoint make_euclidean(const Eigen::VectorXd& x);

// Distance-to-boundary proxy used to size finite-difference stencils:
// z in the half-space, 1-|x| in the ball.  Per-coordinate scale for the
// polar chart (radial steps grow with r, angular steps stay O(1)).
Eigen::VectorXd fd_coordinate_scales(const ChartPoint& p);

ChartPoint chart_transition(const ChartPoint& p, Chart target);

// Exact Jacobian d(target)/d(source) of chart_transition, by forward-mode jets.
Eigen::MatrixXd transition_jacobian(const ChartPoint& p, Chart target);

// Hyperspherical angle helpers (d = n-1 angles for S^{n-1} in R^n).
Eigen::VectorXd angles_to_unit(const Eigen::VectorXd& theta);
Eigen::VectorXd unit_to_angles(const Eigen::VectorXd& u);

namespace detail {

// Transition cores templated on the scalar so jets flow through them.
// Vectors are std::vector<S> with the same coordinate order as ChartPoint.

template <class S>
std::vector<S> ball_to_halfspace(const std::vector<S>& x) {
  const int n = static_cast<int>(x.size());
  S norm2 = x[0] * x[0];
  for (int i = 1; i < n; ++i) norm2 = norm2 + x[i] * x[i];
  // s = |x|^2 - 2 x_n + 1 vanishes only at the deleted point x = e_n.
  S s = norm2 - 2.0 * x[n - 1] + 1.0;
  std::vector<S> out(n);
  for (int i = 0; i + 1 < n; ++i) out[i] = 2.0 * x[i] / s;
  out[n - 1] = (1.0 - norm2) / s;
  return out;
}

template <class S>
std::vector<S> halfspace_to_ball(const std::vector<S>& wz) {
  const int n = static_cast<int>(wz.size());
  S w2 = wz[0] * wz[0];
  for (int i = 1; i + 1 < n; ++i) w2 = w2 + wz[i] * wz[i];
  const S& z = wz[n - 1];
  S q = w2 + (z + 1.0) * (z + 1.0);
  std::vector<S> out(n);
  for (int i = 0; i + 1 < n; ++i) out[i] = 2.0 * wz[i] / q;
  out[n - 1] = (w2 + z * z - 1.0) / q;
  return out;
}

template <class S>
std::vector<S> angles_to_unit_t(const std::vector<S>& theta) {
  const int d = static_cast<int>(theta.size());
  std::vector<S> u(d + 1);
  S p = theta[0] * 0.0 + 1.0;  // typed one
  for (int k = 0; k + 1 < d; ++k) {
    u[d - k] = p * cos(theta[k]);
    p = p * sin(theta[k]);
  }
  u[1] = p * cos(theta[d - 1]);
  u[0] = p * sin(theta[d - 1]);
  return u;
}

template <class S>
std::vector<S> polar_to_ball(const std::vector<S>& rt) {
  const int n = static_cast<int>(rt.size());
  const S& r = rt[0];
  S rho = r / (1.0 + sqrt(1.0 + r * r));
  std::vector<S> theta(rt.begin() + 1, rt.end());
  std::vector<S> u = angles_to_unit_t(theta);
  std::vector<S> out(n);
  for (int i = 0; i < n; ++i) out[i] = rho * u[i];
  return out;
}

// Ball -> polar needs acos/atan2; only the radial part is jet-friendly in
// closed form, so the full map lives in chart.cpp for doubles and the
// Jacobian path assembles angles via acos/atan2 jets there as well.

}  // namespace detail

}  // namespace ahmass
