#include "ahmass/momentum.hpp"

namespace ahmass {

const char* causal_name(CausalClass c) {
  switch (c) {
    case CausalClass::Zero: return "zero";
    case CausalClass::TimelikeFuture: return "timelike-future";
    case CausalClass::TimelikePast: return "timelike-past";
    case CausalClass::NullFuture: return "null-future";
    case CausalClass::NullPast: return "null-past";
    case CausalClass::Spacelike: return "spacelike";
  }
  return "?";
}

CausalClass causal_character(const EnergyMomentum& em, double tol) {
  const double sup = em.m.cwiseAbs().maxCoeff();
  if (sup <= tol) return CausalClass::Zero;
  const double scale2 = em.m.squaredNorm();
  const double qhat = em.q() / scale2;
  if (std::abs(qhat) <= tol)
    return em.m[0] > 0 ? CausalClass::NullFuture : CausalClass::NullPast;
  if (qhat < 0) return CausalClass::Spacelike;
  return em.m[0] > 0 ? CausalClass::TimelikeFuture : CausalClass::TimelikePast;
}

}  // namespace ahmass
