#pragma once

// Energy-momentum arithmetic for joining two asymptotically hyperbolic data
// sets along boosted hemispheres.  The construction itself (interpolating the
// metrics near the equator) lives in constraints.hpp; here we track only what
// happens to the energy-momentum vectors: each data set contributes a boosted
// momentum, the boosts are cap-to-hemisphere maps with v = cos(eps), and the
// question is whether the sum becomes timelike past-pointing once eps is
// small.  The corrections m^eps - m acquired by the surgery are modeled as
// power families with a configurable decay rate.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ahmass/lorentz.hpp"
#include "ahmass/momentum.hpp"

namespace ahmass {

// One-parameter family eps -> base + delta(eps) with
//   delta(eps) = C * eps^{rho_decay + eta} * u,  |u| = 1.
// u is drawn once per family from the seed, so the whole family is fixed by
// (base, C, rho_decay, eta, seed).  eta > 0 realizes a rate strictly faster
// than eps^{rho_decay}; eta = 0 realizes a family that is exactly of that
// order, which is the borderline case the threshold scan is meant to expose.
struct MomentumFamily {
  EnergyMomentum base;
  double C = 0.0;
  double rho_decay = 0.0;
  double eta = 0.1;
  Eigen::VectorXd u;  // unit vector in R^{1,n}, fixed for the family

  int space_dim() const { return base.space_dim(); }
  double realized_decay() const { return rho_decay + eta; }
  Eigen::VectorXd delta(double eps) const;
  EnergyMomentum at(double eps) const;
};

// delta == 0 for every eps.
MomentumFamily constant_family(const EnergyMomentum& base);

MomentumFamily power_family(const EnergyMomentum& base, double C, double rho_decay,
                            double eta, std::uint64_t seed);

// eps_k = (pi/4) 2^{-k}, k = 0..20; gamma spans ~1.4 to ~1e6.
std::vector<double> default_epsilon_grid();

struct GluingScenario {
  MomentumFamily family1;
  MomentumFamily family2;
  std::vector<double> grid;  // strictly decreasing, in (0, pi/2]

  int space_dim() const { return family1.space_dim(); }
};

// Validates the scenario: family1's base momentum must have negative time
// component and be spacelike or null past-pointing (so the boost direction
// along its spatial part is defined and m_1 = |vec m| >= |m_0| > 0), the two
// families must share the dimension, n >= 3, and the grid must be strictly
// decreasing inside (0, pi/2].  Throws ConfigError otherwise.
GluingScenario make_scenario(MomentumFamily family1, MomentumFamily family2,
                             std::vector<double> grid = default_epsilon_grid());

// Unit vector along the spatial part of family1's base momentum.
Eigen::VectorXd boost_direction(const GluingScenario& s);

// Boost with v = cos(eps) along boost_direction; gamma = 1/sin(eps).
LorentzMatrix scenario_boost(const GluingScenario& s, double eps);

// Half-turn R flipping the boost direction and one orthogonal axis; the
// second data set is transported by R * scenario_boost.
LorentzMatrix scenario_half_turn(const GluingScenario& s);

// L1 m^{1,eps} + R L1 m^{2,eps}.  eps must lie on the scenario grid (within
// 1e-12 relative); throws ConfigError otherwise.
EnergyMomentum glued_momentum(const GluingScenario& s, double eps);

// glued = leading + L1 * star whenever family2 realizes the same momenta as
// family1 (the two-copies setting); the parts are computed from family1
// alone, so the reconstruction is only exact in that case.
//   leading = 2 gamma (m_0 - v m_1) e_0,   m_1 = |vec m^1|,
//   star    = (1 + L1^{-1} R L1)(m^{1,eps} - m^1).
struct CancellationParts {
  EnergyMomentum leading;
  Eigen::VectorXd star;
  double v = 0.0;
  double gamma = 1.0;
};

CancellationParts cancellation_decomposition(const GluingScenario& s, double eps);

// L1^{-1} R L1 by matrix products.
Eigen::MatrixXd conjugated_half_turn(const GluingScenario& s, double eps);

// The same matrix in the basis adapted to the boost axis (time, axis, flipped
// orthogonal axis, rest):
//   [[ g^2 (1+v^2), -2 g^2 v ], [ 2 g^2 v, -g^2 (1+v^2) ]]  on (time, axis),
//   -1 on the flipped axis, identity elsewhere.  Pass the same (v, gamma)
// pair the boost was built from, so both routes agree to rounding even when
// 1 - v^2 is ill-conditioned.
Eigen::MatrixXd conjugated_half_turn_closed_form(int n, double v, double gamma);

// C^2 eps^{n/2 - 2}: the decay budget left for |star| once the conjugated
// matrix has spent a factor eps^{-2} of the family's eps^{n/2} fall-off.
double remainder_bound(double eps, int n, double C);

// Frozen constant making remainder_bound an unconditional grid-wide bound:
//   C_eff = sqrt( C * max_k eps_k^2 ||1 + M(eps_k)||_F ),
// with M = L1^{-1} R L1.  The Frobenius norm (root sum of squared row norms)
// dominates the operator norm, so |star| <= ||1+M||_F |delta| pointwise, and
// |star| <= remainder_bound(eps, n, C_eff) * eps^{p - n/2} for a family with
// realized decay p; the bound holds on the whole grid whenever p >= n/2.
double effective_constant(const GluingScenario& s);

struct ThresholdScanRow {
  double eps = 0.0;
  double v = 0.0;
  double gamma = 1.0;
  EnergyMomentum glued;
  double q = 0.0;          // Minkowski form of the glued momentum
  double star_norm = 0.0;  // |star| from the cancellation decomposition
  double bound = 0.0;      // remainder_bound(eps, n, effective_constant)
  CausalClass cls = CausalClass::Zero;
};

// Descending scan over the grid.  found is true when the final run of
// TimelikePast verdicts reaches the smallest grid angle; eps0 is the onset of
// that run (every grid eps <= eps0 classifies TimelikePast) and margin is
// q/gamma^2 there.  When the smallest grid angle is not TimelikePast the scan
// reports found = false with a diagnostics line; it never extrapolates.
struct ThresholdScan {
  std::vector<ThresholdScanRow> rows;
  bool found = false;
  int index0 = -1;
  double eps0 = 0.0;
  double margin = 0.0;
  std::string diagnostics;
};

ThresholdScan epsilon_threshold(const GluingScenario& s);

}  // namespace ahmass
