#include "ahmass/gluing.hpp"

#include <cmath>
#include <cstdio>

#include "ahmass/errors.hpp"
#include "ahmass/rng.hpp"

namespace ahmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

int grid_index(const GluingScenario& s, double eps) {
  for (int k = 0; k < static_cast<int>(s.grid.size()); ++k)
    if (std::abs(eps - s.grid[k]) <= 1e-12 * s.grid[k]) return k;
  throw ConfigError("glued_momentum: eps is not a grid angle");
}

}  // namespace

Eigen::VectorXd MomentumFamily::delta(double eps) const {
  if (C == 0.0) return Eigen::VectorXd::Zero(base.m.size());
  return (C * std::pow(eps, rho_decay + eta)) * u;
}

EnergyMomentum MomentumFamily::at(double eps) const {
  return EnergyMomentum(base.m + delta(eps));
}

MomentumFamily constant_family(const EnergyMomentum& base) {
  MomentumFamily f;
  f.base = base;
  f.C = 0.0;
  f.eta = 0.0;
  f.u = Eigen::VectorXd::Zero(base.m.size());
  return f;
}

MomentumFamily power_family(const EnergyMomentum& base, double C, double rho_decay,
                            double eta, std::uint64_t seed) {
  if (C < 0) throw ConfigError("power_family: C must be nonnegative");
  if (eta < 0) throw ConfigError("power_family: eta must be nonnegative");
  MomentumFamily f;
  f.base = base;
  f.C = C;
  f.rho_decay = rho_decay;
  f.eta = eta;
  DetRng rng(mix_seed(seed, 0x676c7565ULL));
  f.u = rng.unit_vector(static_cast<int>(base.m.size()));
  return f;
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid(21);
  for (int k = 0; k <= 20; ++k) grid[k] = std::ldexp(kPi / 4.0, -k);
  return grid;
}

GluingScenario make_scenario(MomentumFamily family1, MomentumFamily family2,
                             std::vector<double> grid) {
  const int n = family1.space_dim();
  if (n < 3) throw ConfigError("make_scenario: need space dimension >= 3");
  if (family2.space_dim() != n) throw ConfigError("make_scenario: family dimensions differ");
  if (family1.u.size() != n + 1 || family2.u.size() != n + 1)
    throw ConfigError("make_scenario: correction direction has wrong dimension");
  if (!(family1.base.time_component() < 0))
    throw ConfigError("make_scenario: base momentum must have m_0 < 0");
  const CausalClass cls = causal_character(family1.base);
  if (cls != CausalClass::Spacelike && cls != CausalClass::NullPast)
    throw ConfigError("make_scenario: base momentum must be spacelike or null past-pointing");
  if (grid.empty()) throw ConfigError("make_scenario: empty eps grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0 && grid[k] <= kPi / 2.0 + 1e-15))
      throw ConfigError("make_scenario: grid angles must lie in (0, pi/2]");
    if (k > 0 && !(grid[k] < grid[k - 1]))
      throw ConfigError("make_scenario: grid must be strictly decreasing");
  }
  return GluingScenario{std::move(family1), std::move(family2), std::move(grid)};
}

Eigen::VectorXd boost_direction(const GluingScenario& s) {
  Eigen::VectorXd v = s.family1.base.spatial();
  return v / v.norm();
}

LorentzMatrix scenario_boost(const GluingScenario& s, double eps) {
  const auto [v, gamma] = cap_velocity(eps);
  return boost(boost_direction(s), v, gamma);
}

LorentzMatrix scenario_half_turn(const GluingScenario& s) {
  return rotation_pi_about(boost_direction(s));
}

EnergyMomentum glued_momentum(const GluingScenario& s, double eps) {
  grid_index(s, eps);
  const LorentzMatrix L1 = scenario_boost(s, eps);
  const LorentzMatrix L2 = compose(scenario_half_turn(s), L1);
  return EnergyMomentum(L1.M * s.family1.at(eps).m + L2.M * s.family2.at(eps).m);
}

CancellationParts cancellation_decomposition(const GluingScenario& s, double eps) {
  grid_index(s, eps);
  const auto [v, gamma] = cap_velocity(eps);
  const LorentzMatrix L1 = scenario_boost(s, eps);
  const LorentzMatrix R = scenario_half_turn(s);

  CancellationParts parts;
  parts.v = v;
  parts.gamma = gamma;

  const Eigen::VectorXd& m1 = s.family1.base.m;
  const double m1_axis = s.family1.base.spatial().norm();
  Eigen::VectorXd lead = Eigen::VectorXd::Zero(m1.size());
  lead[0] = 2.0 * gamma * (m1[0] - v * m1_axis);
  parts.leading = EnergyMomentum(std::move(lead));

  const Eigen::MatrixXd conj = conjugate_boost(L1, R).M;
  const Eigen::VectorXd diff = s.family1.at(eps).m - m1;
  parts.star = diff + conj * diff;
  return parts;
}

Eigen::MatrixXd conjugated_half_turn(const GluingScenario& s, double eps) {
  return conjugate_boost(scenario_boost(s, eps), scenario_half_turn(s)).M;
}

Eigen::MatrixXd conjugated_half_turn_closed_form(int n, double v, double gamma) {
  const double g2 = gamma * gamma;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M(0, 0) = g2 * (1.0 + v * v);
  M(0, 1) = -2.0 * g2 * v;
  M(1, 0) = 2.0 * g2 * v;
  M(1, 1) = -g2 * (1.0 + v * v);
  M(2, 2) = -1.0;
  return M;
}

double remainder_bound(double eps, int n, double C) {
  if (!(eps > 0 && eps < kPi / 2.0 + 1e-15))
    throw ConfigError("remainder_bound: eps must lie in (0, pi/2)");
  if (n < 3) throw ConfigError("remainder_bound: need n >= 3");
  return C * C * std::pow(eps, 0.5 * n - 2.0);
}

double effective_constant(const GluingScenario& s) {
  const int n = s.space_dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n + 1, n + 1);
  double worst = 0.0;
  for (double eps : s.grid) {
    const double m = (id + conjugated_half_turn(s, eps)).norm();
    worst = std::max(worst, eps * eps * m);
  }
  return std::sqrt(s.family1.C * worst);
}

ThresholdScan epsilon_threshold(const GluingScenario& s) {
  const int n = s.space_dim();
  const double c_eff = effective_constant(s);

  ThresholdScan scan;
  scan.rows.reserve(s.grid.size());
  for (double eps : s.grid) {
    ThresholdScanRow row;
    row.eps = eps;
    const CancellationParts parts = cancellation_decomposition(s, eps);
    row.v = parts.v;
    row.gamma = parts.gamma;
    row.glued = glued_momentum(s, eps);
    row.q = row.glued.q();
    row.star_norm = parts.star.norm();
    row.bound = remainder_bound(eps, n, c_eff);
    row.cls = causal_character(row.glued);
    scan.rows.push_back(std::move(row));
  }

  // onset of the final TimelikePast run, if it reaches the smallest angle
  int k = static_cast<int>(scan.rows.size());
  while (k > 0 && scan.rows[k - 1].cls == CausalClass::TimelikePast) --k;
  if (k == static_cast<int>(scan.rows.size())) {
    const ThresholdScanRow& last = scan.rows.back();
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "no threshold: glued momentum at the smallest grid angle eps=%.6g "
                  "classifies as %s (q/gamma^2=%.6g, |star|=%.6g, bound=%.6g)",
                  last.eps, causal_name(last.cls), last.q / (last.gamma * last.gamma),
                  last.star_norm, last.bound);
    scan.diagnostics = buf;
    return scan;
  }
  scan.found = true;
  scan.index0 = k;
  scan.eps0 = scan.rows[k].eps;
  scan.margin = scan.rows[k].q / (scan.rows[k].gamma * scan.rows[k].gamma);
  return scan;
}

}  // namespace ahmass
