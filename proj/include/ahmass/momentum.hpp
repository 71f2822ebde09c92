#pragma once

// Energy-momentum vectors in R^{1,n} and their causal classification.

#include <Eigen/Dense>

namespace ahmass {

struct EnergyMomentum {
  Eigen::VectorXd m;  // (m_0, m_1, ..., m_n), index 0 = time

  EnergyMomentum() = default;
  explicit EnergyMomentum(Eigen::VectorXd v) : m(std::move(v)) {}

  int space_dim() const { return static_cast<int>(m.size()) - 1; }
  double time_component() const { return m[0]; }
  Eigen::VectorXd spatial() const { return m.tail(m.size() - 1); }
  // Minkowski quadratic form q = m_0^2 - |vec m|^2
  double q() const { return m[0] * m[0] - spatial().squaredNorm(); }
};

enum class CausalClass { Zero, TimelikeFuture, TimelikePast, NullFuture, NullPast, Spacelike };

const char* causal_name(CausalClass c);

// Classification by the sign of q and of m_0.  The quadratic form is
// normalized by |m|_2^2 first, so the verdict is scale-invariant; tol is the
// dead band for the Zero and Null degeneracies.
CausalClass causal_character(const EnergyMomentum& m, double tol = 1e-12);

}  // namespace ahmass
