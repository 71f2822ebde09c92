// Quadrature on round spheres S^d.
//
// d in {2,3}: product Gauss rules in hyperspherical angles, one Gauss-
// Gegenbauer rule per polar-type angle (weight sin^m) and an equispaced
// trapezoid rule on the final circle angle.  Node counts are forced even so
// no node lands on the equator cos(theta_1) = 0 and hemisphere splits are
// exact set partitions.  d = 1 is the plain circle rule.  For d >= 4 a
// seeded Monte Carlo rule with equal weights stands in; its standard error
// is reported by the integrators rather than hidden in the weights.
//
// Weights always sum to the exact sphere area by construction of the
// Gegenbauer zeroth moments.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ahmass/errors.hpp"

namespace ahmass {

// area of the unit sphere S^d
double sphere_area(int d);

struct SphereQuadrature {
  int sphere_dim = 0;       // d; nodes live in R^{d+1}
  Eigen::MatrixXd nodes;    // row i = unit vector u_i
  Eigen::MatrixXd angles;   // row i = hyperspherical angles of u_i
  Eigen::VectorXd weights;  // sum = sphere_area(d)
  bool monte_carlo = false;

  int count() const { return static_cast<int>(weights.size()); }
};

// Product Gauss rule; level = nodes per polar angle (rounded up to even),
// 2*level on the circle.  Supported for d in {1,2,3}.
SphereQuadrature sphere_quadrature(int sphere_dim, int level);

// Equal-weight Monte Carlo rule from normalized Gaussian samples.
SphereQuadrature sphere_quadrature_mc(int sphere_dim, int samples, std::uint64_t seed);

// Gauss nodes/weights for the weight (1-t^2)^(lambda-1/2) on [-1,1]
// (Golub-Welsch on the symmetric Jacobi recurrence).
void gauss_gegenbauer(int count, double lambda, Eigen::VectorXd& nodes,
                      Eigen::VectorXd& weights);

// Deterministic pairwise reduction; independent of any parallel fill order.
double pairwise_sum(const std::vector<double>& terms);

// sqrt(det) of the round metric in hyperspherical angles at the given node.
double round_density(const Eigen::VectorXd& theta);

}  // namespace ahmass
