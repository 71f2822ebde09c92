#include "doctest.h"

#include <cmath>
#include <utility>
#include <vector>

#include "ahmass/constraints.hpp"
#include "ahmass/errors.hpp"
#include "ahmass/families.hpp"
#include "ahmass/hyperbolic.hpp"
#include "ahmass/rng.hpp"
#include "ahmass/smooth.hpp"

using namespace ahmass;

TEST_CASE("vacuum hyperbolic data solves the constraints, before and after the K shift") {
  for (int n : {3, 4}) {
    const InitialDataSet d{hyperbolic_metric(Chart::HalfSpace, n),
                           zero_tensor(Chart::HalfSpace, n), ah_lambda(n)};
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = 0.3 + 0.2 * i;
    const ChartPoint p{Chart::HalfSpace, x};

    const ConstraintValues cv = constraint_operator(d, p);
    CHECK(cv.rho == 0.0);
    CHECK(cv.J.norm() == 0.0);

    const InitialDataSet s = ah_to_ae_shift(d);
    CHECK(s.lambda == 0.0);
    const ConstraintValues cs = constraint_operator(s, p);
    CHECK(std::abs(cs.rho) < 1e-13);
    CHECK(cs.J.norm() < 1e-13);
    // K = -g short-circuits the kinetic term to the exact vacuum value
    CHECK(kinetic_scalar(s.g.value(p), s.K.value(p)) == -n * (n - 1.0));
  }
}

TEST_CASE("kinetic scalar of K = -g is exact for all dimensions") {
  for (int n = 3; n <= 8; ++n) {
    const MetricField g = perturbed_hyperbolic(n, 1e-2, 3.0, 77 + n);
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 0.1);
    const Eigen::MatrixXd gv = g.value({Chart::Ball, x});
    CHECK(kinetic_scalar(gv, (-gv).eval()) == -n * (n - 1.0));
  }
}

TEST_CASE("the K -> K - g shift preserves constraint values when tr K = 0") {
  double worst = 0;
  DetRng rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    MetricField g = perturbed_hyperbolic(n, 5e-3, 3.0, 1000 + trial);
    const InitialDataSet d{std::move(g), zero_tensor(Chart::Ball, n), ah_lambda(n)};
    const InitialDataSet s = ah_to_ae_shift(d);
    const Eigen::VectorXd x = 0.5 * rng.unit_vector(n) * rng.uniform(0.1, 0.8);
    const ChartPoint p{Chart::Ball, x};
    const ConstraintValues a = constraint_operator(d, p);
    const ConstraintValues b = constraint_operator(s, p);
    worst = std::max(worst, std::abs(a.rho - b.rho) + (a.J - b.J).norm());
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("shift rejects data whose Lambda is not the hyperbolic one") {
  const int n = 3;
  InitialDataSet d{hyperbolic_metric(Chart::Ball, n), zero_tensor(Chart::Ball, n), 0.0};
  CHECK_THROWS_AS((void)ah_to_ae_shift(d), ConfigError);
}

TEST_CASE("hyperboloid graph reproduces hyperbolic data with K = -g") {
  const int n = 3;
  const GraphHypersurface h = hyperboloid_graph(n);
  Eigen::VectorXd x(n);
  x << 0.4, -0.7, 1.2;
  const GraphPointData gd = graph_data(h, {Chart::Euclidean, x});
  const Eigen::MatrixXd expect =
      Eigen::MatrixXd::Identity(n, n) - x * x.transpose() / (1.0 + x.squaredNorm());
  CHECK((gd.g - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((gd.K + gd.g).cwiseAbs().maxCoeff() < 1e-15);

  const InitialDataSet d = graph_initial_data(h);
  CHECK(constraint_residual(d, {Chart::Euclidean, x}) < 1e-8);
}

TEST_CASE("random spacelike graphs are vacuum initial data") {
  double worst = 0, worst_sym = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3;
    const GraphHypersurface h = random_spacelike_graph(n, 500 + trial);
    const InitialDataSet d = graph_initial_data(h);
    DetRng rng(900 + trial);
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
      const ChartPoint p{Chart::Euclidean, x};
      worst = std::max(worst, constraint_residual(d, p));
      const GraphPointData gd = graph_data(h, p);
      worst_sym = std::max(worst_sym, (gd.g - gd.g.transpose()).norm());
    }
  }
  CHECK(worst < 1e-8);
  CHECK(worst_sym == 0.0);
}

TEST_CASE("graphs with superluminal slope are rejected") {
  const int n = 3;
  GraphHypersurface h{ScalarField::from_expr(Chart::Euclidean, n,
                                             [](const auto& x) { return 1.5 * x[0]; })};
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  CHECK_THROWS_AS((void)graph_data(h, {Chart::Euclidean, x}), NotSpacelikeError);
}

TEST_CASE("interpolating graph matches the hyperboloid inside and a level outside") {
  const int n = 3;
  const GraphHypersurface h = interpolating_graph(2.0, n);
  Eigen::VectorXd x(n);
  x << 2.5, 0.0, 0.0;  // |x| in [R, R+1]: still exactly the hyperboloid
  CHECK(std::abs(h.f.value({Chart::Euclidean, x}) + std::sqrt(1.0 + 6.25)) < 1e-14);
  x << 6.0, 0.0, 0.0;  // beyond the blend window: constant level at R+1
  CHECK(h.f.value({Chart::Euclidean, x}) == -std::sqrt(10.0));

  const InitialDataSet d = graph_initial_data(h);
  double worst = 0;
  for (double r = 2.2; r <= 5.4; r += 0.2) {
    x << r * 0.6, r * 0.8, 0.0;
    worst = std::max(worst, constraint_residual(d, {Chart::Euclidean, x}));
  }
  CHECK(worst < 1e-6);  // the blend region is non-vacuum only through FD noise
}

TEST_CASE("modified constraint operator vanishes identically at zero perturbation") {
  const int n = 3;
  const InitialDataSet d{hyperbolic_metric(Chart::Ball, n), zero_tensor(Chart::Ball, n),
                         ah_lambda(n)};
  Eigen::VectorXd x(n);
  x << 0.2, 0.1, -0.3;
  const ConstraintValues zero = modified_constraint(
      d, zero_tensor(Chart::Ball, n), zero_tensor(Chart::Ball, n), OneFormW{}, {Chart::Ball, x});
  CHECK(zero.rho == 0.0);
  CHECK(zero.J.norm() == 0.0);
}

TEST_CASE("modified constraint linearizes to second order in the perturbation") {
  const int n = 3;
  const InitialDataSet d{hyperbolic_metric(Chart::Ball, n), zero_tensor(Chart::Ball, n),
                         ah_lambda(n)};
  const TensorField dg = decaying_perturbation(n, 3.0, 42);
  const TensorField dK = decaying_perturbation(n, 3.0, 43);
  Eigen::VectorXd x(n);
  x << 0.2, 0.1, -0.3;
  const ChartPoint p{Chart::Ball, x};

  auto phi = [&](double t) {
    TensorField tdg = tensor_combine(zero_tensor(Chart::Ball, n), 1.0, dg, t);
    TensorField tdK = tensor_combine(zero_tensor(Chart::Ball, n), 1.0, dK, t);
    const ConstraintValues cv = modified_constraint(d, tdK, tdg, OneFormW{}, p);
    Eigen::VectorXd out(n + 1);
    out[0] = cv.rho;
    out.tail(n) = cv.J;
    return out;
  };
  auto D = [&](double t) { return ((phi(t) - phi(-t)) / (2.0 * t)).eval(); };
  const Eigen::VectorXd d1 = D(1e-2), d2 = D(5e-3), d3 = D(2.5e-3);
  const Eigen::VectorXd ref = (16.0 * d3 - d2) / 15.0;
  const double ratio = (d1 - ref).norm() / (d2 - ref).norm();
  CHECK(ratio > 3.0);  // central differences of a C^2 map: error ~ t^2
  CHECK(ratio < 6.0);
}

TEST_CASE("slack inequality holds for the rescaled pair with c = lambda^sigma'") {
  const int n = 3;
  const double lambda = 0.1, sigma = 2.0, sigmap = 3.0;
  auto [d1, d2] = rescaled_pair(n, lambda, sigma, 7);
  const ScalarField chi = ScalarField::from_expr(Chart::HalfSpace, n, [n](const auto& x) {
    return exp_step01((x[n - 1] - 0.4) / 0.4);
  });
  std::vector<ChartPoint> pts;
  DetRng rng(31);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x(n);
    for (int j = 0; j + 1 < n; ++j) x[j] = rng.uniform(-1.0, 1.0);
    x[n - 1] = rng.uniform(0.2, 1.0);
    pts.push_back({Chart::HalfSpace, x});
  }
  const SlackCheck sc = slack_inequality(d1, d2, chi, pts, std::pow(lambda, sigmap), sigma);
  CHECK(sc.ok);
  CHECK(sc.min_margin >= 0.0);
}

TEST_CASE("the rescaled pair's data difference scales exactly like lambda^sigma") {
  const int n = 3;
  const double sigma = 2.0;
  auto [a1, a2] = rescaled_pair(n, 0.1, sigma, 7);
  auto [b1, b2] = rescaled_pair(n, 0.05, sigma, 7);
  Eigen::VectorXd x(n);
  x << 0.3, -0.2, 0.6;
  const ChartPoint p{Chart::HalfSpace, x};
  const double da = (a1.g.value(p) - a2.g.value(p)).norm();
  const double db = (b1.g.value(p) - b2.g.value(p)).norm();
  CHECK(da / db == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("interpolation mismatch vanishes for equal data and is genuinely nonzero otherwise") {
  const int n = 3;
  auto [d1, d2] = rescaled_pair(n, 0.1, 2.0, 7);
  const ScalarField chi = ScalarField::from_expr(Chart::HalfSpace, n, [n](const auto& x) {
    return exp_step01((x[n - 1] - 0.4) / 0.4);
  });
  Eigen::VectorXd x(n);
  x << 0.3, -0.2, 0.6;
  const ChartPoint p{Chart::HalfSpace, x};

  const ConstraintValues same = interpolation_mismatch(d1, d1, chi, p, 0.125);
  CHECK(same.rho == 0.125);  // only the slack shift survives
  CHECK(same.J.norm() == 0.0);

  const ConstraintValues diff = interpolation_mismatch(d1, d2, chi, p, 0.0);
  CHECK(std::abs(diff.rho) > 1e-4);
  CHECK(diff.J.norm() > 1e-4);
}

TEST_CASE("slack function and dominant energy check") {
  CHECK(slack_function(0.0, 0.7, 2.0, 3.0) == 0.0);
  CHECK(slack_function(1.0, 0.7, 2.0, 3.0) == 0.0);
  CHECK(slack_function(0.5, 2.0, 2.0, 3.0) == doctest::Approx(3.0).epsilon(1e-15));

  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
  ConstraintValues cv;
  cv.rho = 1.0;
  cv.J = Eigen::Vector2d(0.6, 0.0);
  CHECK(dec_check(cv, g));
  cv.J = Eigen::Vector2d(1.5, 0.0);
  CHECK_FALSE(dec_check(cv, g));
}
