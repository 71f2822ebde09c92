// Pointwise curvature algebra on Riemannian metric fields.
//
// Everything here works on coordinate jets: a metric 2-jet {g, dg, ddg} at a
// point is enough to assemble Christoffel symbols, Riemann contractions and
// covariant derivatives of scalars/covectors.  The *_from_jet functions are
// pure algebra; the convenience overloads pull the jet from a MetricField
// first (analytic if the field carries one, 4th-order finite differences
// otherwise).
//
// Sign conventions: Ric_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij
// - G^k_il G^l_kj, so the unit round sphere has positive scalar curvature
// and hyperbolic space has Ric = -(n-1) g.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ahmass/errors.hpp"
#include "ahmass/fields.hpp"

namespace ahmass {

// Inverse of a symmetric positive definite matrix; throws
// DegenerateMetricError when g is visibly asymmetric or not SPD.
Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g);

// G[k](i,j) = Gamma^k_ij
struct Christoffels {
  int n = 0;
  std::vector<Eigen::MatrixXd> G;
  const Eigen::MatrixXd& up(int k) const { return G[k]; }
};

Christoffels christoffel_from_jet(const TensorJet& gj);
Christoffels christoffel(const MetricField& g, const ChartPoint& p,
                         const FdOptions& opt = {});

CurvatureResult ricci_from_jet(const TensorJet& gj);

// Uses the field's closed-form curvature hook when it answers at p, else the
// jet algebra.
CurvatureResult ricci(const MetricField& g, const ChartPoint& p,
                      const FdOptions& opt = {});

// Hess_ij N = d_i d_j N - Gamma^k_ij d_k N
Eigen::MatrixXd covariant_hessian_from_jet(const TensorJet& gj, const ScalarJet& Nj);
Eigen::MatrixXd covariant_hessian(const MetricField& g, const ScalarField& N,
                                  const ChartPoint& p, const FdOptions& opt = {});

// (L Y)_ij = D_i Y_j + D_j Y_i
Eigen::MatrixXd killing_operator_from_jet(const TensorJet& gj, const CovectorJet& Yj);
Eigen::MatrixXd killing_operator(const MetricField& g, const CovectorField& Y,
                                 const ChartPoint& p, const FdOptions& opt = {});

// g^{ij} T_ij
double trace(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T);

// |T|_g^2 = g^{ik} g^{jl} T_ij T_kl for a covariant 2-tensor
double tensor_norm_sq(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T);
double tensor_norm(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T);

// |w|_g^2 = g^{ij} w_i w_j for a covector
double covector_norm_sq(const Eigen::MatrixXd& g, const Eigen::VectorXd& w);
double covector_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& w);

}  // namespace ahmass
