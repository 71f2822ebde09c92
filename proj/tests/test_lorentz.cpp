#include "doctest.h"

#include <cmath>

#include "ahmass/lorentz.hpp"
#include "ahmass/rng.hpp"

using namespace ahmass;

TEST_CASE("boost matrix entries for v = 0.6 along e1") {
  const int n = 3;
  const LorentzMatrix L = boost(Eigen::VectorXd::Unit(n, 0), 0.6);
  CHECK(L.M(0, 0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(L.M(0, 1) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(L.M(1, 0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(L.M(1, 1) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(L.M(2, 2) == doctest::Approx(1.0));
  CHECK(L.M(0, 2) == doctest::Approx(0.0));
  CHECK(L.gamma() == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("boosts preserve the Minkowski form at gamma^2-scaled precision") {
  const int n = 4;
  const Eigen::VectorXd d = Eigen::VectorXd::Unit(n, 0);
  for (double v : {0.0, 0.6, std::cos(0.1), std::cos(0.001)}) {
    const LorentzMatrix L = boost(d, v);
    const double g2 = L.gamma() * L.gamma();
    CHECK(lorentz_defect(L) < 1e-12 * g2);
    CHECK(is_proper_orthochronous(L));
    // exact inverse of the metric-exact adjoint
    const LorentzMatrix inv = lorentz_inverse(L);
    CHECK((compose(L, inv).M - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() <
          1e-12 * g2);
  }
}

TEST_CASE("boost input validation") {
  const Eigen::VectorXd d = Eigen::VectorXd::Unit(3, 0);
  CHECK_THROWS_AS(boost(d, 1.0), SuperluminalError);
  CHECK_THROWS_AS(boost(d, -0.1), SuperluminalError);
  CHECK_THROWS_AS(boost(2.0 * d, 0.5), ConfigError);          // not unit
  CHECK_THROWS_AS(boost(d, 0.6, 2.0), ConfigError);           // gamma inconsistent
  CHECK(boost(d, 0.6, 1.25).M(0, 0) == doctest::Approx(1.25));
}

TEST_CASE("velocity addition for collinear boosts") {
  const Eigen::VectorXd d = Eigen::VectorXd::Unit(3, 0);
  const double vs[] = {0.0, 0.6, std::cos(0.1), std::cos(0.001)};
  for (double v1 : vs)
    for (double v2 : vs) {
      const LorentzMatrix C = compose(boost(d, v1), boost(d, v2));
      const double w = (v1 + v2) / (1 + v1 * v2);
      CHECK(std::abs(-C.M(0, 1) / C.M(0, 0) - w) < 1e-10);
      // matrix-level: composed boost equals the boost at the added velocity
      const double gw = C.M(0, 0);
      const LorentzMatrix B = boost(d, w, gw);
      CHECK((C.M - B.M).cwiseAbs().maxCoeff() < 1e-12 * gw * gw);
    }
}

TEST_CASE("half-turn conjugation of a boost in closed form") {
  // R flips e1 (the boost axis) and e2; L^{-1} R L then reads
  //   [ gamma^2(1+v^2)   -2 gamma^2 v   0 ]
  //   [ 2 gamma^2 v   -gamma^2(1+v^2)   0 ]  acting on (t, x1), with -1 on x2
  const int n = 4;
  const Eigen::VectorXd d = Eigen::VectorXd::Unit(n, 0);
  for (double v : {0.0, 0.6, std::cos(0.1), std::cos(0.001)}) {
    const LorentzMatrix L = boost(d, v);
    const double g = L.gamma(), g2 = g * g;
    Eigen::MatrixXd want = Eigen::MatrixXd::Identity(n + 1, n + 1);
    want(0, 0) = g2 * (1 + v * v);
    want(0, 1) = -2 * g2 * v;
    want(1, 0) = 2 * g2 * v;
    want(1, 1) = -g2 * (1 + v * v);
    want(2, 2) = -1;
    const Eigen::MatrixXd got = conjugate_boost(L, rotation_pi(n, 0, 1)).M;
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12 * g2);
  }
}

TEST_CASE("half-turn constructors agree and are involutive") {
  const int n = 4;
  const LorentzMatrix R1 = rotation_pi(n, 0, 1);
  const LorentzMatrix R2 = rotation_pi_about(Eigen::VectorXd::Unit(n, 0));
  CHECK((R1.M - R2.M).cwiseAbs().maxCoeff() == 0.0);
  CHECK((compose(R1, R1).M - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(is_proper_orthochronous(R1));

  // generic axis: still a proper involution that flips the axis
  DetRng rng(77);
  const Eigen::VectorXd d = rng.unit_vector(n);
  const LorentzMatrix R = rotation_pi_about(d);
  CHECK(lorentz_defect(R) < 1e-14);
  CHECK((compose(R, R).M - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::VectorXd dd(n + 1);
  dd[0] = 0;
  dd.tail(n) = d;
  CHECK((R.M * dd + dd).head(1).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(((R.M * dd).tail(n) + d).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sphere action of an aligned boost against the closed-form map") {
  // boost along e_n: (x', x^n) -> (x'/(gamma(1-v x^n)), (x^n-v)/(1-v x^n))
  const int n = 3;
  const Eigen::VectorXd axis = Eigen::VectorXd::Unit(n, n - 1);
  const double v = 0.6, gamma = 1.25;
  const LorentzMatrix L = boost(axis, v);
  DetRng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::VectorXd x = rng.unit_vector(n);
    const Eigen::VectorXd y = act_on_sphere(L, x);
    const double denom = 1 - v * x[n - 1];
    CHECK(std::abs(y[n - 1] - (x[n - 1] - v) / denom) < 1e-13);
    for (int i = 0; i + 1 < n; ++i) CHECK(std::abs(y[i] - x[i] / (gamma * denom)) < 1e-13);
    CHECK(std::abs(y.norm() - 1.0) < 1e-13);
  }
  CHECK_THROWS_AS(act_on_sphere(L, 1.5 * Eigen::VectorXd::Unit(n, 0)), ConfigError);
}

TEST_CASE("cap velocity maps the epsilon cap boundary to the equator") {
  const int n = 4;
  const Eigen::VectorXd axis = Eigen::VectorXd::Unit(n, n - 1);
  DetRng rng(32);
  for (double eps : {0.3, 0.1, 0.03}) {
    const auto [v, gamma] = cap_velocity(eps);
    CHECK(v == doctest::Approx(std::cos(eps)).epsilon(1e-15));
    CHECK(gamma == doctest::Approx(1.0 / std::sin(eps)).epsilon(1e-15));
    const LorentzMatrix L = boost(axis, v, gamma);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd x(n);
      x.head(n - 1) = std::sin(eps) * rng.unit_vector(n - 1);
      x[n - 1] = std::cos(eps);
      const Eigen::VectorXd y = act_on_sphere(L, x / x.norm());
      CHECK(std::abs(y[n - 1]) < 1e-10);
      CHECK(std::abs(y.norm() - 1.0) < 1e-10);
    }
  }
  CHECK_THROWS_AS(cap_velocity(0.0), ConfigError);
  CHECK_THROWS_AS(cap_velocity(2.0), ConfigError);
}

TEST_CASE("momentum action preserves the quadratic form and flips nothing else") {
  const int n = 3;
  Eigen::VectorXd mv(n + 1);
  mv << -2.0, 0.5, -0.3, 0.7;
  const EnergyMomentum m(mv);
  const LorentzMatrix L = boost(Eigen::VectorXd::Unit(n, 1), std::cos(0.01));
  const EnergyMomentum bm = act_on_momentum(L, m);
  const double g2 = L.gamma() * L.gamma();
  CHECK(std::abs(bm.q() - m.q()) < 1e-10 * g2);
  CHECK(causal_character(bm) == causal_character(m));
}

TEST_CASE("causal classification") {
  auto em = [](std::initializer_list<double> v) {
    Eigen::VectorXd m(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) m[i++] = x;
    return EnergyMomentum(m);
  };
  CHECK(causal_character(em({-1, 0, 0, 0})) == CausalClass::TimelikePast);
  CHECK(causal_character(em({1, 0, 0, 0})) == CausalClass::TimelikeFuture);
  CHECK(causal_character(em({1, 2, 0, 0})) == CausalClass::Spacelike);
  CHECK(causal_character(em({-1, 1, 0, 0})) == CausalClass::NullPast);
  CHECK(causal_character(em({1, 1, 0, 0})) == CausalClass::NullFuture);
  CHECK(causal_character(em({0, 0, 0, 0})) == CausalClass::Zero);
  // scale invariance of the dead band
  CHECK(causal_character(em({1e8, 1e8, 0, 0})) == CausalClass::NullFuture);
  CHECK(causal_name(CausalClass::TimelikePast) == std::string("timelike-past"));
}

TEST_CASE("orthochronous test rejects time reversal") {
  const int n = 3;
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n + 1, n + 1);
  T(0, 0) = -1;
  T(1, 1) = -1;  // keep det = +1
  const LorentzMatrix L{T};
  CHECK(lorentz_defect(L) == 0.0);
  CHECK_FALSE(is_proper_orthochronous(L));
}
