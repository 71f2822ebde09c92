#include "ahmass/lorentz.hpp"

#include <cmath>

namespace ahmass {

namespace {

Eigen::VectorXd minkowski_diag(int n) {
  Eigen::VectorXd eta = Eigen::VectorXd::Ones(n + 1);
  eta[0] = -1.0;
  return eta;
}

}  // namespace

LorentzMatrix lorentz_identity(int n) {
  return LorentzMatrix(Eigen::MatrixXd::Identity(n + 1, n + 1));
}

LorentzMatrix boost(const Eigen::VectorXd& direction, double v) {
  if (v < 0 || v >= 1.0) throw SuperluminalError("boost: velocity must lie in [0,1)");
  return boost(direction, v, 1.0 / std::sqrt((1.0 - v) * (1.0 + v)));
}

LorentzMatrix boost(const Eigen::VectorXd& direction, double v, double gamma) {
  const int n = static_cast<int>(direction.size());
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw ConfigError("boost: direction must be a unit vector");
  if (v < 0 || v >= 1.0) throw SuperluminalError("boost: velocity must lie in [0,1)");
  if (!(gamma >= 1.0) || std::abs(gamma * gamma * (1.0 - v) * (1.0 + v) - 1.0) > 1e-3)
    throw ConfigError("boost: gamma inconsistent with v");
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M(0, 0) = gamma;
  for (int i = 0; i < n; ++i) {
    M(0, i + 1) = M(i + 1, 0) = -gamma * v * direction[i];
    for (int j = 0; j < n; ++j)
      M(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * direction[i] * direction[j];
  }
  return LorentzMatrix(std::move(M));
}

LorentzMatrix rotation_pi(int n, int axis1, int axis2) {
  if (axis1 == axis2 || axis1 < 0 || axis2 < 0 || axis1 >= n || axis2 >= n)
    throw ConfigError("rotation_pi: need two distinct spatial axes");
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M(axis1 + 1, axis1 + 1) = -1.0;
  M(axis2 + 1, axis2 + 1) = -1.0;
  return LorentzMatrix(std::move(M));
}

LorentzMatrix rotation_pi_about(const Eigen::VectorXd& direction) {
  const int n = static_cast<int>(direction.size());
  Eigen::VectorXd d = direction.normalized();
  int imin = 0;
  d.cwiseAbs().minCoeff(&imin);
  Eigen::VectorXd e = Eigen::VectorXd::Unit(n, imin);
  e -= e.dot(d) * d;
  e.normalize();
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M.bottomRightCorner(n, n) -= 2.0 * d * d.transpose();
  M.bottomRightCorner(n, n) -= 2.0 * e * e.transpose();
  return LorentzMatrix(std::move(M));
}

LorentzMatrix lorentz_inverse(const LorentzMatrix& L) {
  const int n = L.space_dim();
  Eigen::VectorXd eta = minkowski_diag(n);
  return LorentzMatrix(eta.asDiagonal() * L.M.transpose() * eta.asDiagonal());
}

LorentzMatrix compose(const LorentzMatrix& A, const LorentzMatrix& B) {
  return LorentzMatrix(A.M * B.M);
}

LorentzMatrix conjugate_boost(const LorentzMatrix& L, const LorentzMatrix& R) {
  return LorentzMatrix(lorentz_inverse(L).M * R.M * L.M);
}

double lorentz_defect(const LorentzMatrix& L) {
  Eigen::VectorXd eta = minkowski_diag(L.space_dim());
  Eigen::MatrixXd defect =
      L.M.transpose() * eta.asDiagonal() * L.M - Eigen::MatrixXd(eta.asDiagonal());
  return defect.cwiseAbs().maxCoeff();
}

bool is_proper_orthochronous(const LorentzMatrix& L, double tol) {
  if (lorentz_defect(L) > tol * std::max(1.0, L.gamma() * L.gamma())) return false;
  return L.M(0, 0) > 0 && L.M.determinant() > 0;
}

Eigen::VectorXd act_on_sphere(const LorentzMatrix& L, const Eigen::VectorXd& x) {
  const int n = L.space_dim();
  if (x.size() != n) throw ConfigError("act_on_sphere: dimension mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw ConfigError("act_on_sphere: input must be a unit vector");
  Eigen::VectorXd ray(n + 1);
  ray[0] = 1.0;
  ray.tail(n) = x;
  Eigen::VectorXd out = L.M * ray;
  if (std::abs(out[0]) < 1e-14)
    throw DivergenceError("act_on_sphere: image ray hit the plane at infinity");
  Eigen::VectorXd y = out.tail(n) / out[0];
  return y / y.norm();
}

std::pair<double, double> cap_velocity(double eps) {
  if (!(eps > 0 && eps <= 1.5707963267948966 + 1e-15))
    throw ConfigError("cap_velocity: eps must lie in (0, pi/2]");
  return {std::cos(eps), 1.0 / std::sin(eps)};
}

EnergyMomentum act_on_momentum(const LorentzMatrix& L, const EnergyMomentum& m) {
  if (m.m.size() != L.M.rows()) throw ConfigError("act_on_momentum: dimension mismatch");
  return EnergyMomentum(L.M * m.m);
}

}  // namespace ahmass
