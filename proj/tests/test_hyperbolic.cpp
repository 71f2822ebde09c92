#include "doctest.h"

#include <cmath>

#include "ahmass/chart.hpp"
#include "ahmass/hyperbolic.hpp"
#include "ahmass/rng.hpp"

using namespace ahmass;

namespace {

ChartPoint random_halfspace_point(int n, DetRng& rng) {
  Eigen::VectorXd wz(n);
  wz.head(n - 1) = rng.unit_vector(n - 1) * (10.0 * std::pow(rng.uniform01(), 1.0 / (n - 1)));
  wz[n - 1] = rng.uniform(0.1, 10.0);
  return make_halfspace(wz);
}

}  // namespace

TEST_CASE("static potentials solve Hess V = V b, analytically and with FD metric jets") {
  for (int n : {3, 4}) {
    const MetricField b = hyperbolic_metric(Chart::HalfSpace, n);
    const MetricField b_fd = b.without_jets();
    DetRng rng(101 + n);
    double worst = 0, worst_fd = 0;
    for (int mu = 0; mu <= n; ++mu) {
      const ScalarField V = static_kid(mu, Chart::HalfSpace, n);
      for (int trial = 0; trial < 40; ++trial) {
        const ChartPoint p = random_halfspace_point(n, rng);
        worst = std::max(worst, kid_residual_norm(b, V, p));
        if (trial % 8 == 0) worst_fd = std::max(worst_fd, kid_residual_norm(b_fd, V, p));
      }
    }
    CHECK(worst < 1e-10);
    CHECK(worst_fd < 1e-6);
    CHECK(worst_fd > 0.0);  // the two routes are genuinely different
  }
}

TEST_CASE("static potentials in the ball and polar charts") {
  const int n = 3;
  Eigen::VectorXd xb(n);
  xb << 0.3, -0.2, 0.45;
  const ChartPoint pb = make_ball(xb);
  const MetricField bb = hyperbolic_metric(Chart::Ball, n);
  for (int mu = 0; mu <= n; ++mu)
    CHECK(kid_residual_norm(bb, static_kid(mu, Chart::Ball, n), pb) < 1e-11);

  Eigen::VectorXd rp(n);
  rp << 2.5, 1.1, 2.2;
  const ChartPoint pp = make_polar(rp);
  const MetricField bp = hyperbolic_metric(Chart::Polar, n);
  for (int mu = 0; mu <= n; ++mu)
    CHECK(kid_residual_norm(bp, static_kid(mu, Chart::Polar, n), pp) < 1e-11);

  // closed forms: V_0 = (1+|x|^2)/(1-|x|^2), V_mu = 2 x^mu/(1-|x|^2);
  // polar V_0 = sqrt(1+r^2)
  const double s = xb.squaredNorm();
  CHECK(static_kid(0, Chart::Ball, n).value(pb) == doctest::Approx((1 + s) / (1 - s)).epsilon(1e-14));
  CHECK(static_kid(1, Chart::Ball, n).value(pb) == doctest::Approx(2 * xb[0] / (1 - s)).epsilon(1e-14));
  CHECK(static_kid(0, Chart::Polar, n).value(pp) == doctest::Approx(std::sqrt(1 + 2.5 * 2.5)).epsilon(1e-14));
}

TEST_CASE("per-chart potentials agree through the transition maps") {
  const int n = 3;
  Eigen::VectorXd wz(n);
  wz << 0.4, -1.2, 0.7;
  const ChartPoint p = make_halfspace(wz);
  const ChartPoint q = chart_transition(p, Chart::Ball);
  const ChartPoint qp = chart_transition(p, Chart::Polar);
  for (int mu = 0; mu <= n; ++mu) {
    const double vh = static_kid(mu, Chart::HalfSpace, n).value(p);
    CHECK(static_kid(mu, Chart::Ball, n).value(q) == doctest::Approx(vh).epsilon(1e-12));
    CHECK(static_kid(mu, Chart::Polar, n).value(qp) == doctest::Approx(vh).epsilon(1e-12));
  }
}

TEST_CASE("Killing basis of the half-space model") {
  for (int n : {3, 4, 5}) {
    const MetricField b = hyperbolic_metric(Chart::HalfSpace, n);
    const auto basis = killing_basis(n);
    CHECK(static_cast<int>(basis.size()) == n * (n + 1) / 2);
    DetRng rng(55 + n);
    double worst = 0;
    for (const auto& Y : basis)
      for (int trial = 0; trial < 15; ++trial)
        worst = std::max(worst, killing_residual_norm(b, Y, random_halfspace_point(n, rng)));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("killing_form_x rejects a non-Killing flat input") {
  Eigen::MatrixXd sym(2, 2);
  sym << 0, 1, 1, 0;
  CHECK_THROWS_AS(killing_form_x(Eigen::VectorXd::Zero(2), sym, 3), ConfigError);
  // antisymmetric input is accepted
  Eigen::MatrixXd rot(2, 2);
  rot << 0, 1, -1, 0;
  const CovectorField Y = killing_form_x(Eigen::VectorXd::Ones(2), rot, 3);
  CHECK(Y.valid());
}

TEST_CASE("non-Killing covector is detected by the residual") {
  const int n = 3;
  const MetricField b = hyperbolic_metric(Chart::HalfSpace, n);
  const CovectorField bad = CovectorField::from_expr(Chart::HalfSpace, n, [](const auto& x) {
    std::vector<std::decay_t<decltype(x[0])>> out(3);
    out[0] = x[0] * x[0];
    out[1] = x[1];
    out[2] = x[2] * 0.0;
    return out;
  });
  Eigen::VectorXd wz(n);
  wz << 0.4, -1.2, 0.7;
  CHECK(killing_residual_norm(b, bad, make_halfspace(wz)) > 1e-2);
}

TEST_CASE("dilation field in ball and polar coordinates") {
  Eigen::VectorXd x(3);
  x << 0.2, -0.1, 0.3;
  const Eigen::VectorXd Zb = dilation_field(make_ball(x));
  const double s = x.squaredNorm();
  CHECK((Zb - (1 - s) / (1 + s) * x).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::VectorXd rp(3);
  rp << 1.7, 0.9, 2.0;
  const Eigen::VectorXd Zp = dilation_field(make_polar(rp));
  CHECK(Zp[0] == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(Zp[1] == doctest::Approx(0.0));
  CHECK(Zp[2] == doctest::Approx(0.0));

  // push-forward consistency: J * Z_polar = Z_ball at the image point
  const ChartPoint pp = make_polar(rp);
  const Eigen::MatrixXd J = transition_jacobian(pp, Chart::Ball);
  const ChartPoint pb = chart_transition(pp, Chart::Ball);
  CHECK(((J * Zp) - dilation_field(pb)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decay bookkeeping accepts only the allowed exponent window") {
  CHECK_THROWS_AS(DecaySpec(3, 1.0, 1.5), ConfigError);   // sigma too small
  CHECK_THROWS_AS(DecaySpec(3, 4.0, 2.5), ConfigError);   // s out of [n/2,(n+1)/2)
  const DecaySpec ok(3, 3.2, 1.5);
  CHECK(ok.correction_rate() == doctest::Approx(1.7).epsilon(1e-15));
}
