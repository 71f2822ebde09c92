// Proper orthochronous Lorentz matrices on R^{1,n} and their conformal
// action on the unit sphere S^{n-1} of R^n.
//
// Dictionary: a sphere point x is the null ray (1, x); a Lorentz matrix acts
// on the ray and the image is renormalized by its time component.  Boosts
// therefore act as cap-expanding conformal maps; the closed-form point action
// for an axis-aligned boost is kept in the tests as an independent oracle.

#pragma once

#include <utility>

#include <Eigen/Dense>

#include "ahmass/errors.hpp"
#include "ahmass/momentum.hpp"

namespace ahmass {

struct LorentzMatrix {
  Eigen::MatrixXd M;  // (n+1) x (n+1), index 0 = time

  LorentzMatrix() = default;
  explicit LorentzMatrix(Eigen::MatrixXd m) : M(std::move(m)) {}

  int space_dim() const { return static_cast<int>(M.rows()) - 1; }
  double gamma() const { return M(0, 0); }
};

LorentzMatrix lorentz_identity(int n);

// Boost with velocity v in [0,1) along the unit direction d in R^n:
//   L^0_0 = gamma, L^0_i = L^i_0 = -gamma v d_i,
//   L^i_j = delta_ij + (gamma-1) d_i d_j.
LorentzMatrix boost(const Eigen::VectorXd& direction, double v);

// Same boost with the Lorentz factor supplied by the caller, for when gamma
// is known from better-conditioned data than 1 - v^2: with v = cos(eps) the
// difference 1 - v^2 loses ~eps^{-2} ulps, while gamma = 1/sin(eps) is exact.
// gamma must equal 1/sqrt(1-v^2) in exact arithmetic (checked loosely).
LorentzMatrix boost(const Eigen::VectorXd& direction, double v, double gamma);

// Spatial half-turn: flips spatial axes axis1 and axis2 (0-based among the
// n spatial slots), identity elsewhere.  Proper and involutive.
LorentzMatrix rotation_pi(int n, int axis1 = 0, int axis2 = 1);

// Half-turn flipping the spatial direction d and one unit vector orthogonal
// to it (chosen deterministically), for scenarios not aligned with an axis.
LorentzMatrix rotation_pi_about(const Eigen::VectorXd& direction);

// eta L^T eta; exact inverse for exactly-Lorentz input.
LorentzMatrix lorentz_inverse(const LorentzMatrix& L);

LorentzMatrix compose(const LorentzMatrix& A, const LorentzMatrix& B);

// L^{-1} R L
LorentzMatrix conjugate_boost(const LorentzMatrix& L, const LorentzMatrix& R);

// max-norm of L^T eta L - eta; zero exactly when L preserves the form.
double lorentz_defect(const LorentzMatrix& L);

bool is_proper_orthochronous(const LorentzMatrix& L, double tol = 1e-9);

// Conformal action on S^{n-1}: apply L to (1, x), renormalize by the time
// component.  Input must be unit to 1e-10; output is renormalized to unit.
Eigen::VectorXd act_on_sphere(const LorentzMatrix& L, const Eigen::VectorXd& x);

// Velocity that maps the polar cap of opening angle eps to a hemisphere:
// v = cos(eps), gamma = 1/sin(eps).  Requires eps in (0, pi/2].
std::pair<double, double> cap_velocity(double eps);

EnergyMomentum act_on_momentum(const LorentzMatrix& L, const EnergyMomentum& m);

}  // namespace ahmass
