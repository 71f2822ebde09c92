#include "ahmass/constraints.hpp"

#include <cmath>
#include <string>

#include "ahmass/hyperbolic.hpp"
#include "ahmass/rng.hpp"
#include "ahmass/smooth.hpp"

namespace ahmass {

namespace {

template <class S>
S squared_norm(const std::vector<S>& x, int count) {
  S s = x[0] * x[0];
  for (int i = 1; i < count; ++i) s = s + x[i] * x[i];
  return s;
}

// g^{ik} K_kj with exact short-circuits for K = +-g and K = 0.
Eigen::MatrixXd mixed_form(const Eigen::MatrixXd& ginv, const Eigen::MatrixXd& g,
                           const Eigen::MatrixXd& K) {
  const int n = static_cast<int>(g.rows());
  if ((K.array() == 0.0).all()) return Eigen::MatrixXd::Zero(n, n);
  if ((K.array() == g.array()).all()) return Eigen::MatrixXd::Identity(n, n);
  if ((K.array() == (-g).array()).all()) return -Eigen::MatrixXd::Identity(n, n);
  return ginv * K;
}

}  // namespace

TensorField zero_tensor(Chart chart, int n) {
  return TensorField::from_expr(chart, n, [](const auto&, auto&) {});
}

double kinetic_scalar(const Eigen::MatrixXd& g, const Eigen::MatrixXd& K) {
  Eigen::MatrixXd A = mixed_form(metric_inverse(g), g, K);
  const double tr = A.trace();
  return (A * A).trace() - tr * tr;
}

ConstraintValues constraint_operator(const InitialDataSet& data, const ChartPoint& p,
                                     const FdOptions& opt) {
  const int n = data.dim();
  TensorJet gj = data.g.jet(p, opt);
  Eigen::MatrixXd ginv = metric_inverse(gj.v);
  CurvatureResult cur = ricci(data.g, p, opt);

  TensorJet Kj = data.K.jet(p, opt);
  Eigen::MatrixXd A = mixed_form(ginv, gj.v, Kj.v);
  const double trK = A.trace();
  const double K2 = (A * A).trace();

  ConstraintValues out;
  out.rho = 0.5 * (cur.scalar - K2 + trK * trK - 2.0 * data.lambda);

  // J_j = g^{ik} ( d_k K_ij - G^l_ki K_lj - G^l_kj K_il ) - d_j (tr K)
  Christoffels Gam = christoffel_from_jet(gj);
  out.J = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd DK = Kj.d1[k];
    for (int l = 0; l < n; ++l) {
      DK.noalias() -= Gam.up(l).row(k).transpose() * Kj.v.row(l);
      DK.noalias() -= Kj.v.col(l) * Gam.up(l).row(k);
    }
    out.J.noalias() += DK.transpose() * ginv.col(k);
    // d_k tr K = -tr(ginv dg_k ginv K) + tr(ginv dK_k)
    const double dtr =
        -(ginv * gj.d1[k] * ginv * Kj.v).trace() + (ginv * Kj.d1[k]).trace();
    out.J[k] -= dtr;
  }
  return out;
}

bool dec_check(const ConstraintValues& cv, const Eigen::MatrixXd& g, double tol) {
  return cv.rho >= covector_norm(metric_inverse(g), cv.J) - tol;
}

double constraint_residual(const InitialDataSet& data, const ChartPoint& p,
                           const FdOptions& opt) {
  ConstraintValues cv = constraint_operator(data, p, opt);
  return std::abs(cv.rho) + covector_norm(metric_inverse(data.g.value(p)), cv.J);
}

InitialDataSet ah_to_ae_shift(const InitialDataSet& data) {
  const int n = data.dim();
  const double want = ah_lambda(n);
  if (std::abs(data.lambda - want) > 1e-12 * (1.0 + std::abs(want)))
    throw ConfigError("ah_to_ae_shift: input data must carry Lambda = -n(n-1)/2");
  return InitialDataSet{data.g, tensor_combine(data.K, 1.0, data.g, -1.0), 0.0};
}

GraphPointData graph_data(const GraphHypersurface& h, const ChartPoint& p,
                          const FdOptions& opt) {
  const int n = h.dim();
  ScalarJet fj = h.f.jet(p, opt);
  const double q = 1.0 - fj.g.squaredNorm();
  if (!(q > 0.0))
    throw NotSpacelikeError("graph_data: |df| >= 1 (|df|^2 = " +
                            std::to_string(fj.g.squaredNorm()) + ")");
  GraphPointData out;
  out.g = Eigen::MatrixXd::Identity(n, n) - fj.g * fj.g.transpose();
  out.K = fj.h / std::sqrt(q);
  return out;
}

InitialDataSet graph_initial_data(const GraphHypersurface& h) {
  const int n = h.dim();
  const ScalarField f = h.f;
  MetricField g(Chart::Euclidean, n, [f, n](const Eigen::VectorXd& x) {
    ScalarJet fj = f.jet({Chart::Euclidean, x});
    if (!(fj.g.squaredNorm() < 1.0))
      throw NotSpacelikeError("graph metric: |df| >= 1");
    return (Eigen::MatrixXd::Identity(n, n) - fj.g * fj.g.transpose()).eval();
  });
  TensorField K(Chart::Euclidean, n, [f](const Eigen::VectorXd& x) {
    ScalarJet fj = f.jet({Chart::Euclidean, x});
    const double q = 1.0 - fj.g.squaredNorm();
    if (!(q > 0.0)) throw NotSpacelikeError("graph second fundamental form: |df| >= 1");
    return (fj.h / std::sqrt(q)).eval();
  });
  return InitialDataSet{std::move(g), std::move(K), 0.0};
}

GraphHypersurface hyperboloid_graph(int n) {
  return GraphHypersurface{ScalarField::from_expr(
      Chart::Euclidean, n,
      [n](const auto& x) { return -sqrt(1.0 + squared_norm(x, n)); })};
}

GraphHypersurface random_spacelike_graph(int n, std::uint64_t seed) {
  DetRng rng(mix_seed(seed, 0x67726170));
  const int waves = 3;
  std::vector<Eigen::VectorXd> k(waves);
  std::vector<double> c(waves), phase(waves);
  double slope_bound = 0.0;
  for (int w = 0; w < waves; ++w) {
    Eigen::VectorXd kw(n);
    do {
      for (int i = 0; i < n; ++i) kw[i] = rng.uniform_int(-2, 2);
    } while (kw.squaredNorm() == 0.0);
    k[w] = kw;
    c[w] = rng.uniform(-1.0, 1.0);
    phase[w] = rng.uniform(0.0, 6.283185307179586);
    slope_bound += std::abs(c[w]) * kw.norm();
  }
  const double amp = 0.9 / slope_bound;
  return GraphHypersurface{ScalarField::from_expr(
      Chart::Euclidean, n, [n, k, c, phase, amp](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        S acc = x[0] * 0.0;
        for (std::size_t w = 0; w < k.size(); ++w) {
          S arg = x[0] * k[w][0] + phase[w];
          for (int i = 1; i < n; ++i) arg = arg + x[i] * k[w][i];
          acc = acc + c[w] * cos(arg);
        }
        return amp * acc;
      })};
}

GraphHypersurface interpolating_graph(double R, int n) {
  if (!(R > 0)) throw ConfigError("interpolating_graph: R must be positive");
  const double a = R + 1.0;
  double w = 2.0;
  for (int attempt = 0; attempt < 6; ++attempt, w *= 2.0) {
    // m = r below a, the constant a beyond a+w; blending toward the level
    // already reached keeps |m'| = |1 - s - u s'| bounded by ~0.82.
    auto profile = [a, w](const auto& r) {
      auto s = exp_step01((r - a) / w);
      return r * (1.0 - s) + a * s;
    };
    // Radial slope check: f = -sqrt(1+m^2), f' = -m m'/sqrt(1+m^2).
    bool ok = true;
    double bad_r = 0.0;
    const double r_hi = a + w + 1.0;
    const int steps = static_cast<int>(r_hi / 1e-3);
    for (int i = 1; i <= steps && ok; ++i) {
      const double r = i * 1e-3;
      Jet1 m = profile(Jet1::variable(r));
      const double fp = -m.v * m.d1 / std::sqrt(1.0 + m.v * m.v);
      if (!(std::abs(fp) < 1.0 - 1e-3)) {
        ok = false;
        bad_r = r;
      }
    }
    if (!ok) {
      if (attempt == 5)
        throw NotSpacelikeError("interpolating_graph: slope margin failed at r = " +
                                std::to_string(bad_r));
      continue;
    }
    return GraphHypersurface{ScalarField::from_expr(
        Chart::Euclidean, n, [n, a, profile](const auto& x) {
          auto r2 = squared_norm(x, n);
          // Inside the untouched region both branches are the same function;
          // this one avoids sqrt(r2) at the origin.
          if (value_of(r2) < a * a) return -sqrt(1.0 + r2);
          auto m = profile(sqrt(r2));
          return -sqrt(1.0 + m * m);
        })};
  }
  throw NotSpacelikeError("interpolating_graph: construction failed");
}

ConstraintValues modified_constraint(const InitialDataSet& data, const TensorField& dK,
                                     const TensorField& dg, const OneFormW& W,
                                     const ChartPoint& p, const FdOptions& opt) {
  InitialDataSet pert{tensor_combine(data.g, 1.0, dg, 1.0),
                      tensor_combine(data.K, 1.0, dK, 1.0), data.lambda};
  ConstraintValues after = constraint_operator(pert, p, opt);
  ConstraintValues before = constraint_operator(data, p, opt);

  Eigen::MatrixXd gv = data.g.value(p);
  Eigen::VectorXd Z = before.J;
  if (W.valid()) Z += W.value(p);
  Eigen::VectorXd corr = 0.5 * (dg.value(p) * (metric_inverse(gv) * Z));

  ConstraintValues out;
  out.rho = after.rho - before.rho;
  out.J = after.J - before.J - corr;
  return out;
}

ConstraintValues interpolation_mismatch(const InitialDataSet& data1,
                                        const InitialDataSet& data2, const ScalarField& chi,
                                        const ChartPoint& p, double slack0,
                                        const FdOptions& opt) {
  if (data1.lambda != data2.lambda)
    throw ConfigError("interpolation_mismatch: cosmological constants differ");
  InitialDataSet mixed{cutoff_combine(chi, data1.g, data2.g),
                       cutoff_combine(chi, data1.K, data2.K), data1.lambda};
  ConstraintValues c1 = constraint_operator(data1, p, opt);
  ConstraintValues c2 = constraint_operator(data2, p, opt);
  ConstraintValues cm = constraint_operator(mixed, p, opt);
  const double t = chi.value(p);

  ConstraintValues out;
  out.rho = t * c1.rho + (1.0 - t) * c2.rho - cm.rho + slack0;
  out.J = t * c1.J + (1.0 - t) * c2.J - cm.J;
  return out;
}

double slack_function(double chi, double z, double sigma, double c) {
  return c * chi * (1.0 - chi) * std::pow(z, sigma);
}

double half_space_height(const ChartPoint& p) {
  ChartPoint hs = (p.chart == Chart::HalfSpace) ? p : chart_transition(p, Chart::HalfSpace);
  return hs.x[hs.dim() - 1];
}

SlackCheck slack_inequality(const InitialDataSet& data1, const InitialDataSet& data2,
                            const ScalarField& chi, const std::vector<ChartPoint>& pts,
                            double c, double sigma, const FdOptions& opt) {
  SlackCheck out;
  bool first = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const ChartPoint& p = pts[i];
    const double t = chi.value(p);
    const double lhs = slack_function(t, half_space_height(p), sigma, c);

    Eigen::MatrixXd g1 = data1.g.value(p), g2 = data2.g.value(p);
    Eigen::MatrixXd diff = g1 - g2;
    ConstraintValues c1 = constraint_operator(data1, p, opt);
    ConstraintValues c2 = constraint_operator(data2, p, opt);
    const double rhs =
        t * (1.0 - t) *
        (tensor_norm(g1, diff) * covector_norm(metric_inverse(g1), c1.J) +
         tensor_norm(g2, diff) * covector_norm(metric_inverse(g2), c2.J));

    const double margin = lhs - rhs;
    if (first || margin < out.min_margin) {
      out.min_margin = margin;
      out.worst_index = static_cast<int>(i);
      first = false;
    }
    if (margin < 0) out.ok = false;
  }
  return out;
}

std::pair<InitialDataSet, InitialDataSet> rescaled_pair(int n, double lambda, double sigma,
                                                        std::uint64_t seed) {
  auto make = [n, lambda, sigma](std::uint64_t s) {
    DetRng rng(mix_seed(s, 0x72736364));
    // Bounded smooth coefficient tensors; every entry a single wave in (w, z).
    const int m = sym_count(n);
    Eigen::VectorXd ce(m), cf(m);
    Eigen::MatrixXd ke(m, n), kf(m, n);
    for (int i = 0; i < m; ++i) {
      ce[i] = rng.uniform(-0.5, 0.5);
      cf[i] = rng.uniform(-0.5, 0.5);
      for (int j = 0; j < n; ++j) {
        ke(i, j) = rng.uniform_int(-1, 1);
        kf(i, j) = rng.uniform_int(-1, 1);
      }
    }
    const double amp = std::pow(lambda, sigma);
    MetricField b = hyperbolic_metric(Chart::HalfSpace, n);
    TensorField E = TensorField::from_expr(
        Chart::HalfSpace, n, [n, sigma, ce, ke](const auto& x, auto& out) {
          auto zs = pow(x[n - 1], sigma);
          for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
              const int idx = sym_index(i, j, n);
              auto arg = x[0] * ke(idx, 0);
              for (int a = 1; a < n; ++a) arg = arg + x[a] * ke(idx, a);
              out.at(i, j) = zs * ce[idx] * cos(arg);
            }
        });
    TensorField F = TensorField::from_expr(
        Chart::HalfSpace, n, [n, sigma, cf, kf](const auto& x, auto& out) {
          auto zs = pow(x[n - 1], sigma);
          for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
              const int idx = sym_index(i, j, n);
              auto arg = x[0] * kf(idx, 0);
              for (int a = 1; a < n; ++a) arg = arg + x[a] * kf(idx, a);
              out.at(i, j) = zs * cf[idx] * sin(arg);
            }
        });
    MetricField g = tensor_combine(b, 1.0, E, amp);
    // K = -g + amp * F: momentum density of the same (lambda z)^sigma order.
    TensorField K = tensor_combine(g, -1.0, F, amp);
    return InitialDataSet{std::move(g), std::move(K), 0.0};
  };
  return {make(seed), make(seed + 1)};
}

}  // namespace ahmass
