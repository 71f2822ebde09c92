// Constraint operator on initial data sets, dominant-energy bookkeeping, the
// K -> K - g shift between the hyperbolic and flat-slice conventions, graph
// hypersurfaces in Minkowski space, and the algebra of the modified
// constraint operator used for cut-and-paste gluing.
//
// Conventions (recorded once, used everywhere):
//   rho = ( R(g) - |K|_g^2 + (tr_g K)^2 - 2 Lambda ) / 2
//   J_j = D^i ( K_ij - tr_g K g_ij )
// with matter coupling one.  The dominant energy condition reads
// rho >= |J|_g.  Constraint pairs are ordered (J, rho) where the literature
// writes them as pairs.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ahmass/fields.hpp"
#include "ahmass/geometry.hpp"

namespace ahmass {

// Exact zero symmetric 2-tensor field (zero value and zero jets).
TensorField zero_tensor(Chart chart, int n);

struct InitialDataSet {
  MetricField g;
  TensorField K;
  double lambda = 0.0;  // cosmological constant

  int dim() const { return g.dim(); }
  Chart chart() const { return g.chart(); }
};

// Lambda of the unit-curvature hyperbolic background.
inline double ah_lambda(int n) { return -0.5 * n * (n - 1.0); }

struct ConstraintValues {
  double rho = 0.0;
  Eigen::VectorXd J;
};

ConstraintValues constraint_operator(const InitialDataSet& data, const ChartPoint& p,
                                     const FdOptions& opt = {});

// |K|_g^2 - (tr_g K)^2.  K = +-g short-circuits to exact +-identity mixed
// components, so the shifted vacuum value -n(n-1) comes out exactly.
double kinetic_scalar(const Eigen::MatrixXd& g, const Eigen::MatrixXd& K);

// rho >= |J|_g - tol
bool dec_check(const ConstraintValues& cv, const Eigen::MatrixXd& g, double tol = 1e-12);

// |rho| + |J|_g, the scalar residual used by vacuum checks.
double constraint_residual(const InitialDataSet& data, const ChartPoint& p,
                           const FdOptions& opt = {});

// (g, K, Lambda = -n(n-1)/2)  ->  (g, K - g, 0).  Constraint values are
// preserved pointwise when tr_g K = 0 (in particular for K = 0, which maps to
// K = -g); J is preserved unconditionally.
InitialDataSet ah_to_ae_shift(const InitialDataSet& data);

// Spacelike graph t = f(x) in Minkowski R^{1,n}; f lives on the Euclidean
// chart.
struct GraphHypersurface {
  ScalarField f;

  int dim() const { return f.dim(); }
};

struct GraphPointData {
  Eigen::MatrixXd g;  // delta_ij - d_i f d_j f
  Eigen::MatrixXd K;  // Hess_ij f / sqrt(1 - |df|^2), future-pointing normal
};

// Throws NotSpacelikeError when |df| >= 1 at p.
GraphPointData graph_data(const GraphHypersurface& h, const ChartPoint& p,
                          const FdOptions& opt = {});

// Field version of graph_data with Lambda = 0; derivatives of g and K come
// from finite differences of the pointwise formulas.
InitialDataSet graph_initial_data(const GraphHypersurface& h);

// f = -sqrt(1 + |x|^2): the lower unit hyperboloid.  Induced metric is the
// hyperbolic metric in graph coordinates and K = -g.
GraphHypersurface hyperboloid_graph(int n);

// Bounded random trigonometric polynomial, amplitude scaled so that the
// rigorous bound on |df| stays below 0.9.
GraphHypersurface random_spacelike_graph(int n, std::uint64_t seed);

// Equals the hyperboloid for |x| <= R+1, constant (-sqrt(1+(R+1)^2)) for
// |x| >= R+1+w, smooth and spacelike with margin 1e-3 in between.  The
// profile is -sqrt(1 + m(r)^2) where m blends r into the constant level R+1
// across the window; blending the radius rather than the value keeps the
// slope below the hyperboloid's own bound.  The margin is verified on a
// dense radial grid; on failure the window doubles (a few times, then
// NotSpacelikeError reports the bad radius).
GraphHypersurface interpolating_graph(double R, int n);

using OneFormW = CovectorField;

// C(K + dK, g + dg) - C(K, g) - (1/2) (dg . (J(K,g) + W), 0), returned as
// (rho part, J part) deltas; the 1/2-term acts on the J slot only, with
// (dg . Z)_i = dg_ij g^{jk} Z_k.  An invalid W means W = 0.
ConstraintValues modified_constraint(const InitialDataSet& data, const TensorField& dK,
                                     const TensorField& dg, const OneFormW& W,
                                     const ChartPoint& p, const FdOptions& opt = {});

// chi C(K1,g1) + (1-chi) C(K2,g2) - C(chi K1 + (1-chi) K2, chi g1 + (1-chi) g2)
// plus (0, slack0) on the rho slot.
ConstraintValues interpolation_mismatch(const InitialDataSet& data1,
                                        const InitialDataSet& data2, const ScalarField& chi,
                                        const ChartPoint& p, double slack0 = 0.0,
                                        const FdOptions& opt = {});

// c * chi (1 - chi) * z^sigma
double slack_function(double chi, double z, double sigma, double c);

// Height function of the half-space chart at p (transitions first if needed).
double half_space_height(const ChartPoint& p);

struct SlackCheck {
  bool ok = true;
  double min_margin = 0.0;  // min over the grid of (slack - right-hand side)
  int worst_index = -1;
};

// Verifies  c chi(1-chi) z^sigma >= chi(1-chi) ( |g1-g2|_{g1} |J1|_{g1}
// + |g1-g2|_{g2} |J2|_{g2} )  at the given points.
SlackCheck slack_inequality(const InitialDataSet& data1, const InitialDataSet& data2,
                            const ScalarField& chi, const std::vector<ChartPoint>& pts,
                            double c, double sigma, const FdOptions& opt = {});

// Two nearby half-space data sets whose metric difference and momentum
// densities both scale like (lambda z)^sigma: the regime where the slack
// constant rule c = c' lambda^{sigma'}, sigma < sigma' < 2 sigma, applies.
std::pair<InitialDataSet, InitialDataSet> rescaled_pair(int n, double lambda, double sigma,
                                                        std::uint64_t seed);

}  // namespace ahmass
