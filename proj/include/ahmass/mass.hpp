// Energy-momentum of asymptotically hyperbolic metrics via the trace-free
// Ricci flux through large coordinate spheres, extrapolated in the sphere
// radius, with full/hemisphere variants and the mass-aspect moment map.
//
// The flux at a sphere point, per unit round measure on S^{n-1}, is
//   -V_mu Z^j (R^i_j - (R/n) d^i_j) n_i * (area density of the coordinate
//   sphere relative to the round measure),
// with Z the dilation field and n_i the outward conormal of increasing
// radius.  The overall positive normalization constant is fixed to 1.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ahmass/fields.hpp"
#include "ahmass/momentum.hpp"
#include "ahmass/quadrature.hpp"

namespace ahmass {

struct RadiusSchedule {
  std::vector<double> radii;     // strictly increasing
  double decay_exponent = 1.5;   // model: sphere integral = limit + O(r^-decay_exponent)

  // r_k = 2^k for k in [k_min, k_max]
  static RadiusSchedule dyadic(int k_min = 3, int k_max = 8, double q = 1.5);
};

enum class Hemisphere { Full, Upper, Lower };

// Flux integrand at one sphere point for one static potential V; p must lie
// in the Ball or Polar chart of g.
double mass_integrand(const MetricField& g, const ScalarField& V, const ChartPoint& p,
                      const FdOptions& opt = {});

struct MassResult {
  EnergyMomentum value;                      // extrapolated limit
  Eigen::VectorXd error_estimate;            // per component
  std::vector<double> radii;
  std::vector<Eigen::VectorXd> integrals;    // raw sphere integrals, one per radius
  std::vector<Eigen::VectorXd> extrapolants; // extrapolation-tableau diagonal
  bool diverged = false;
  std::string note;
  double mc_standard_error = 0;              // quadrature noise floor (Monte Carlo rules)
};

MassResult energy_momentum(const MetricField& g, const SphereQuadrature& quad,
                           const RadiusSchedule& sched, Hemisphere half = Hemisphere::Full,
                           const FdOptions& opt = {});

// First moments of a mass-aspect density against (1, x^i).
EnergyMomentum momentum_from_aspect(const std::function<double(const Eigen::VectorXd&)>& mu,
                                    const SphereQuadrature& quad);

// Number of worker threads for node sweeps (AHMASS_THREADS, default 1).
int worker_threads();

}  // namespace ahmass
