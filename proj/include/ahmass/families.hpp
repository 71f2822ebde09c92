// Registered asymptotically hyperbolic metric families.  All carry exact
// jets so curvature is available at full precision; the trace-free Ricci of
// a decaying family sits many orders below the Ricci scale near infinity,
// which finite differences in doubles cannot resolve.

#pragma once

#include <cstdint>

#include "ahmass/fields.hpp"

namespace ahmass {

// Anti-de Sitter Schwarzschild with mass parameter m:
//   Polar: dr^2 / (1 + r^2 - 2 m r^{2-n}) + r^2 h,
//   Ball:  phi^2 (delta_ij + psi u_i u_j), phi = 2/(1-|x|^2),
//          psi = 2 m r^{2-n}/f with r = 2|x|/(1-|x|^2).
// Valid outside the horizon; the SPD check rejects points inside.
MetricField schwarzschild_ads(double m, Chart chart, int n);

// Seeded smooth symmetric perturbation e with |e|_b = O(r^-sigma), ball
// chart; entries are short cosine sums times (1-|x|^2)^(sigma-2).
TensorField decaying_perturbation(int n, double sigma, std::uint64_t seed);

// b + amplitude * decaying_perturbation
MetricField perturbed_hyperbolic(int n, double amplitude, double sigma, std::uint64_t seed);

// b + a conformal bump supported in the open lower half (last ball
// coordinate negative) and away from the origin; same sigma fall-off.
MetricField lower_cap_perturbation(int n, double amplitude, double sigma);

}  // namespace ahmass
