#include "doctest.h"

#include <cmath>
#include <numbers>
#include <tuple>

#include "ahmass/errors.hpp"
#include "ahmass/gluing.hpp"

using namespace ahmass;

namespace {
constexpr double pi = std::numbers::pi;

EnergyMomentum base_m(int n) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n + 1);
  m[0] = -1.0;
  m[1] = 2.0;
  return EnergyMomentum(m);
}
}  // namespace

TEST_CASE("default epsilon grid") {
  const std::vector<double> grid = default_epsilon_grid();
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == pi / 4);
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] == 0.5 * grid[k - 1]);
}

TEST_CASE("without corrections the glued momentum is purely temporal") {
  const MomentumFamily f = constant_family(base_m(3));
  const GluingScenario s = make_scenario(f, f);
  for (double eps : s.grid) {
    const auto [v, g] = cap_velocity(eps);
    const EnergyMomentum glued = glued_momentum(s, eps);
    const double expect = 2.0 * g * (-1.0 - v * 2.0);
    CHECK(std::abs(glued.m[0] - expect) <= 1e-14 * g * g);
    CHECK(glued.spatial().norm() == 0.0);  // the boosted spatial parts cancel exactly
    const CancellationParts parts = cancellation_decomposition(s, eps);
    CHECK(parts.star.norm() == 0.0);
  }
  const ThresholdScan scan = epsilon_threshold(s);
  CHECK(scan.found);
  CHECK(scan.eps0 == s.grid[0]);  // m0 - v m1 < 0 already at eps = pi/4
  CHECK(scan.margin == doctest::Approx(23.3137).epsilon(1e-4));
}

TEST_CASE("eps = pi/2 means no boost: glued = (1 + R) m") {
  const MomentumFamily f = constant_family(base_m(3));
  const GluingScenario s = make_scenario(f, f, {pi / 2});
  const EnergyMomentum glued = glued_momentum(s, pi / 2);
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(4);
  expect[0] = -2.0;
  CHECK((glued.m - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("conjugated half-turn matches its closed form on the whole grid") {
  const MomentumFamily f = constant_family(base_m(4));
  const GluingScenario s = make_scenario(f, f);
  for (double eps : s.grid) {
    const auto [v, g] = cap_velocity(eps);
    const Eigen::MatrixXd A = conjugated_half_turn(s, eps);
    const Eigen::MatrixXd B = conjugated_half_turn_closed_form(4, v, g);
    CHECK((A - B).cwiseAbs().maxCoeff() <= 1e-14 * g * g);
  }
}

TEST_CASE("corrections enter linearly and the cancellation parts reassemble the sum") {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(6);
  m[0] = -1.0;
  m[1] = 1.0;
  m[2] = 1.5;
  m[4] = -0.5;
  const EnergyMomentum base(m);
  const MomentumFamily fc = power_family(base, 0.7, 2.4, 0.2, 42);
  const GluingScenario sc = make_scenario(fc, fc);
  const GluingScenario s0 = make_scenario(constant_family(base), constant_family(base));
  for (double eps : sc.grid) {
    const double g = cap_velocity(eps).second;
    const LorentzMatrix L1 = scenario_boost(sc, eps);
    const LorentzMatrix R = scenario_half_turn(sc);
    const Eigen::VectorXd lhs = glued_momentum(sc, eps).m - glued_momentum(s0, eps).m;
    const Eigen::VectorXd rhs = (L1.M + R.M * L1.M) * fc.delta(eps);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14 * g * g);

    const CancellationParts parts = cancellation_decomposition(sc, eps);
    const Eigen::VectorXd rec = parts.leading.m + L1.M * parts.star;
    CHECK((rec - glued_momentum(sc, eps).m).cwiseAbs().maxCoeff() <= 1e-14 * g * g);
  }
}

TEST_CASE("threshold scan finds the timelike-past onset for decaying corrections") {
  const std::tuple<int, double, double, double, double> cases[] = {
      // n, rho, eta, margin, c_eff
      {5, 2.4, 0.2, 21.2602, 2.067},
      {8, 3.9, 0.2, 22.0083, 2.186},
      {4, 2.0, 0.1, 20.8968, 2.023},
  };
  for (const auto& [n, rho, eta, margin, c_eff] : cases) {
    CAPTURE(n);
    const MomentumFamily f = power_family(base_m(n), 1.0, rho, eta, 1234);
    const GluingScenario s = make_scenario(f, f);
    const ThresholdScan scan = epsilon_threshold(s);
    REQUIRE(scan.found);
    CHECK(scan.margin == doctest::Approx(margin).epsilon(1e-4));
    CHECK(effective_constant(s) == doctest::Approx(c_eff).epsilon(1e-3));

    // the remainder stays below its budget with eps^eta to spare (eta >= 0.1 here)
    bool q_pos = true;
    double worst_ratio = 0;
    for (const ThresholdScanRow& row : scan.rows) {
      worst_ratio = std::max(worst_ratio, row.star_norm / (row.bound * std::pow(row.eps, 0.1)));
      if (row.eps <= scan.eps0 && row.q <= 0) q_pos = false;
    }
    CHECK(worst_ratio < 1.0);
    CHECK(q_pos);
  }
}

TEST_CASE("eta = 0 keeps |star| bounded away from zero yet the threshold still appears") {
  const MomentumFamily f = power_family(base_m(4), 1.0, 2.0, 0.0, 1234);
  const GluingScenario s = make_scenario(f, f);
  const ThresholdScan scan = epsilon_threshold(s);
  CHECK(scan.found);
  // rho = n/2 exactly: star_norm tends to a positive constant instead of decaying
  CHECK(scan.rows.back().star_norm > 0.5);
  CHECK(scan.rows.back().star_norm < scan.rows.front().star_norm);

  const MomentumFamily f5 = power_family(base_m(5), 1.0, 2.4, 0.0, 7);
  const GluingScenario s5 = make_scenario(f5, f5);
  const ThresholdScan scan5 = epsilon_threshold(s5);
  CHECK(scan5.found);
  CHECK(scan5.margin == doctest::Approx(23.6329).epsilon(1e-4));
}

TEST_CASE("power family is deterministic in the seed") {
  const MomentumFamily a = power_family(base_m(5), 1.0, 2.4, 0.2, 99);
  const MomentumFamily b = power_family(base_m(5), 1.0, 2.4, 0.2, 99);
  const MomentumFamily c = power_family(base_m(5), 1.0, 2.4, 0.2, 100);
  CHECK(a.u == b.u);
  CHECK(a.u != c.u);
  CHECK(a.u.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.delta(0.5) == (std::pow(0.5, 2.6) * a.u).eval());
}

TEST_CASE("remainder bound formula and domain") {
  CHECK(remainder_bound(0.5, 6, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(remainder_bound(0.25, 4, 1.0) == 1.0);  // n = 4: eps^0 budget
  CHECK_THROWS_AS((void)remainder_bound(0.0, 5, 1.0), ConfigError);
  CHECK_THROWS_AS((void)remainder_bound(2.0, 5, 1.0), ConfigError);
  CHECK_THROWS_AS((void)remainder_bound(0.5, 2, 1.0), ConfigError);
}

TEST_CASE("scenario validation") {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(4);
  m[0] = 1.0;
  m[1] = 2.0;
  // future-pointing time component
  CHECK_THROWS_AS((void)make_scenario(constant_family(EnergyMomentum(m)),
                                      constant_family(EnergyMomentum(m))),
                  ConfigError);
  // timelike past base: boost direction undefined at |vec m| < |m0|
  m[0] = -3.0;
  CHECK_THROWS_AS((void)make_scenario(constant_family(EnergyMomentum(m)),
                                      constant_family(EnergyMomentum(m))),
                  ConfigError);
  const MomentumFamily f = constant_family(base_m(3));
  // increasing grid
  CHECK_THROWS_AS((void)make_scenario(f, f, {0.1, 0.2}), ConfigError);
  // off-grid angle
  const GluingScenario s = make_scenario(f, f);
  CHECK_THROWS_AS((void)glued_momentum(s, 0.123456), ConfigError);
}
