// Model metrics of hyperbolic space in each chart, the flat and round
// reference metrics, the static potentials V_mu, the Killing one-forms of the
// half-space conformal structure, and the dilation field Z.
//
// The potentials are stored per chart in closed form; the per-chart formulas
// agree with transporting the half-space ones through chart_transition (this
// is tested, not assumed).  In the ball chart they read
//   V_0 = (1+|x|^2)/(1-|x|^2),   V_mu = 2 x^mu/(1-|x|^2),
// i.e. the restriction of the ambient Minkowski coordinates to the unit
// hyperboloid.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ahmass/fields.hpp"
#include "ahmass/geometry.hpp"

namespace ahmass {

// Hyperbolic metric b in the requested chart, with exact jets.
MetricField hyperbolic_metric(Chart chart, int n);

// Flat metric on the Euclidean chart.
MetricField euclidean_metric(int n);

// Unit round metric on S^d in hyperspherical angles (Euclidean chart of
// dimension d, coordinates theta_1..theta_d).
MetricField round_metric(int d);

// Static potential V_mu, 0 <= mu <= n, solving Hess V = V b on the model.
// Half-space: V_(i) = w^i/z, V_(n) = (|w|^2+z^2-1)/(2z),
// V_(0) = (|w|^2+z^2+1)/(2z).
ScalarField static_kid(int mu, Chart chart, int n);

// | Hess N - N g |_g at p; zero iff N is a static KID of g.
double kid_residual_norm(const MetricField& g, const ScalarField& N,
                         const ChartPoint& p, const FdOptions& opt = {});

// | D Y + (D Y)^T |_g at p; zero iff Y is Killing for g.
double killing_residual_norm(const MetricField& g, const CovectorField& Y,
                             const ChartPoint& p, const FdOptions& opt = {});

// Killing one-forms of b in the half-space chart.
//
// killing_form_x: Y_X = X_i dw^i / z^2 with X_i(w) = a_i + M_ij w^j a Killing
// one-form of flat R^{n-1}; M must be antisymmetric (checked through the flat
// killing_operator, non-Killing inputs are rejected).
CovectorField killing_form_x(const Eigen::VectorXd& a, const Eigen::MatrixXd& M, int n);

// killing_form_ca: Y_{c,A} = (c + A^j w_j) dz/z
//   + ( -A_i/2 + [A^j w_j w_i - A_i |w|^2/2 + c w_i]/z^2 ) dw^i.
CovectorField killing_form_ca(double c, const Eigen::VectorXd& A, int n);

// All n(n+1)/2 generators: n-1 translations, (n-1)(n-2)/2 rotations, the
// dilation (c=1), and n-1 inversions (A = e_i).
std::vector<CovectorField> killing_basis(int n);

// Z = (1-|x|^2) x^i d_i / (1+|x|^2) in the ball chart; equals r d_r in the
// polar chart.  Components returned in the chart of p (upper index).
Eigen::VectorXd dilation_field(const ChartPoint& p);

// Fall-off bookkeeping: sigma is the metric decay rate, s the gluing radial
// rate.  Constructor enforces s in [n/2, (n+1)/2) and sigma > (n-1)/2 + s.
struct DecaySpec {
  int n = 0;
  double sigma = 0;
  double s = 0;
  DecaySpec(int n_, double sigma_, double s_);
  double correction_rate() const { return sigma - s; }
};

}  // namespace ahmass
