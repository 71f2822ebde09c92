#include "ahmass/hyperbolic.hpp"

#include <cmath>

namespace ahmass {

namespace {

template <class S>
S squared_norm(const std::vector<S>& x, int count) {
  S s = x[0] * x[0];
  for (int i = 1; i < count; ++i) s = s + x[i] * x[i];
  return s;
}

// Einstein metrics carry their Ricci in closed form: Ric = c*g with constant
// c, so the trace-free part is exactly zero instead of a rounding residue.
void register_einstein_curvature(MetricField& g, double c) {
  auto value = g;  // copy before the hook exists; hook-free evaluator
  g.set_curvature_fn(
      [value, c](const Eigen::VectorXd& x) -> std::optional<CurvatureResult> {
        const int n = value.dim();
        CurvatureResult out;
        out.ricci = c * value.value({value.chart(), x});
        out.scalar = c * n;
        out.trace_free = Eigen::MatrixXd::Zero(n, n);
        return out;
      });
}

}  // namespace

MetricField hyperbolic_metric(Chart chart, int n) {
  MetricField g;
  switch (chart) {
    case Chart::HalfSpace:
      g = MetricField::from_expr(chart, n, [n](const auto& x, auto& gg) {
        auto iz2 = 1.0 / (x[n - 1] * x[n - 1]);
        for (int i = 0; i < n; ++i) gg.at(i, i) = iz2;
      });
      break;
    case Chart::Ball:
      g = MetricField::from_expr(chart, n, [n](const auto& x, auto& gg) {
        auto s = squared_norm(x, n);
        auto phi = 4.0 / ((1.0 - s) * (1.0 - s));
        for (int i = 0; i < n; ++i) gg.at(i, i) = phi;
      });
      break;
    case Chart::Polar:
      g = MetricField::from_expr(chart, n, [n](const auto& x, auto& gg) {
        gg.at(0, 0) = 1.0 / (1.0 + x[0] * x[0]);
        auto p = x[0] * x[0];
        for (int k = 1; k < n; ++k) {
          gg.at(k, k) = p;
          if (k + 1 < n) p = p * sin(x[k]) * sin(x[k]);
        }
      });
      break;
    case Chart::Euclidean:
      throw ChartDomainError("hyperbolic_metric: no model on the Euclidean chart");
  }
  register_einstein_curvature(g, -(n - 1.0));
  return g;
}

MetricField euclidean_metric(int n) {
  MetricField g = MetricField::from_expr(Chart::Euclidean, n, [n](const auto& x, auto& gg) {
    auto one = x[0] * 0.0 + 1.0;
    for (int i = 0; i < n; ++i) gg.at(i, i) = one;
  });
  register_einstein_curvature(g, 0.0);
  return g;
}

MetricField round_metric(int d) {
  MetricField g = MetricField::from_expr(Chart::Euclidean, d, [d](const auto& x, auto& gg) {
    auto p = x[0] * 0.0 + 1.0;
    for (int k = 0; k < d; ++k) {
      gg.at(k, k) = p;
      if (k + 1 < d) p = p * sin(x[k]) * sin(x[k]);
    }
  });
  register_einstein_curvature(g, d - 1.0);
  return g;
}

ScalarField static_kid(int mu, Chart chart, int n) {
  if (mu < 0 || mu > n) throw ConfigError("static_kid: index out of range");
  switch (chart) {
    case Chart::HalfSpace:
      if (mu == 0 || mu == n) {
        const double sgn = (mu == 0) ? 1.0 : -1.0;
        return ScalarField::from_expr(chart, n, [n, sgn](const auto& x) {
          return (squared_norm(x, n) + sgn) / (2.0 * x[n - 1]);
        });
      }
      return ScalarField::from_expr(chart, n,
                                    [mu, n](const auto& x) { return x[mu - 1] / x[n - 1]; });
    case Chart::Ball:
      if (mu == 0)
        return ScalarField::from_expr(chart, n, [n](const auto& x) {
          auto s = squared_norm(x, n);
          return (1.0 + s) / (1.0 - s);
        });
      return ScalarField::from_expr(chart, n, [mu, n](const auto& x) {
        return 2.0 * x[mu - 1] / (1.0 - squared_norm(x, n));
      });
    case Chart::Polar:
      if (mu == 0)
        return ScalarField::from_expr(chart, n,
                                      [](const auto& x) { return sqrt(1.0 + x[0] * x[0]); });
      return ScalarField::from_expr(chart, n, [mu, n](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        std::vector<S> theta(x.begin() + 1, x.end());
        std::vector<S> u = detail::angles_to_unit_t(theta);
        return x[0] * u[mu - 1];
      });
    case Chart::Euclidean:
      break;
  }
  throw ChartDomainError("static_kid: no model on the Euclidean chart");
}

double kid_residual_norm(const MetricField& g, const ScalarField& N,
                         const ChartPoint& p, const FdOptions& opt) {
  TensorJet gj = g.jet(p, opt);
  Eigen::MatrixXd H = covariant_hessian_from_jet(gj, N.jet(p, opt));
  return tensor_norm(gj.v, H - N.value(p) * gj.v);
}

double killing_residual_norm(const MetricField& g, const CovectorField& Y,
                             const ChartPoint& p, const FdOptions& opt) {
  TensorJet gj = g.jet(p, opt);
  return tensor_norm(gj.v, killing_operator_from_jet(gj, Y.jet(p, opt)));
}

CovectorField killing_form_x(const Eigen::VectorXd& a, const Eigen::MatrixXd& M, int n) {
  const int d = n - 1;
  if (a.size() != d || M.rows() != d || M.cols() != d)
    throw ConfigError("killing_form_x: expected X data of dimension n-1");

  // X must be Killing for flat R^{n-1}; for affine X the flat Killing
  // operator is the constant matrix M + M^T.
  {
    CovectorField X = CovectorField::from_expr(Chart::Euclidean, d, [a, M, d](const auto& w) {
      using S = std::decay_t<decltype(w[0])>;
      std::vector<S> out(d);
      for (int i = 0; i < d; ++i) {
        out[i] = w[0] * 0.0 + a[i];
        for (int j = 0; j < d; ++j) out[i] = out[i] + M(i, j) * w[j];
      }
      return out;
    });
    ChartPoint q = make_euclidean(Eigen::VectorXd::Constant(d, 0.25));
    Eigen::MatrixXd res = killing_operator(euclidean_metric(d), X, q);
    if (res.cwiseAbs().maxCoeff() > 1e-12 * (1.0 + M.cwiseAbs().maxCoeff()))
      throw ConfigError("killing_form_x: X is not a flat Killing one-form");
  }

  return CovectorField::from_expr(Chart::HalfSpace, n, [a, M, n, d](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    auto iz2 = 1.0 / (x[n - 1] * x[n - 1]);
    std::vector<S> out(n);
    for (int i = 0; i < d; ++i) {
      S Xi = x[0] * 0.0 + a[i];
      for (int j = 0; j < d; ++j) Xi = Xi + M(i, j) * x[j];
      out[i] = Xi * iz2;
    }
    out[n - 1] = x[0] * 0.0;
    return out;
  });
}

CovectorField killing_form_ca(double c, const Eigen::VectorXd& A, int n) {
  const int d = n - 1;
  if (A.size() != d) throw ConfigError("killing_form_ca: expected A of dimension n-1");
  return CovectorField::from_expr(Chart::HalfSpace, n, [c, A, n, d](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    S Aw = x[0] * 0.0;
    for (int j = 0; j < d; ++j) Aw = Aw + A[j] * x[j];
    S w2 = squared_norm(x, d);
    auto iz2 = 1.0 / (x[n - 1] * x[n - 1]);
    std::vector<S> out(n);
    for (int i = 0; i < d; ++i)
      out[i] = (Aw * x[i] - 0.5 * A[i] * w2 + c * x[i]) * iz2 - 0.5 * A[i];
    out[n - 1] = (Aw + c) / x[n - 1];
    return out;
  });
}

std::vector<CovectorField> killing_basis(int n) {
  const int d = n - 1;
  std::vector<CovectorField> out;
  out.reserve(n * (n + 1) / 2);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd zeroM = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    out.push_back(killing_form_x(Eigen::VectorXd::Unit(d, i), zeroM, n));
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      Eigen::MatrixXd M = zeroM;
      M(p, q) = 1.0;
      M(q, p) = -1.0;
      out.push_back(killing_form_x(zero, M, n));
    }
  out.push_back(killing_form_ca(1.0, zero, n));
  for (int i = 0; i < d; ++i)
    out.push_back(killing_form_ca(0.0, Eigen::VectorXd::Unit(d, i), n));
  return out;
}

Eigen::VectorXd dilation_field(const ChartPoint& p) {
  if (p.chart == Chart::Ball) {
    double s = p.x.squaredNorm();
    return ((1.0 - s) / (1.0 + s)) * p.x;
  }
  if (p.chart == Chart::Polar) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(p.dim());
    v[0] = p.x[0];
    return v;
  }
  throw ChartDomainError("dilation_field: defined in the ball and polar charts");
}

DecaySpec::DecaySpec(int n_, double sigma_, double s_) : n(n_), sigma(sigma_), s(s_) {
  if (n < 3) throw ConfigError("DecaySpec: n >= 3 required");
  if (!(s >= 0.5 * n && s < 0.5 * (n + 1)))
    throw ConfigError("DecaySpec: s must lie in [n/2, (n+1)/2)");
  if (!(sigma > 0.5 * (n - 1) + s))
    throw ConfigError("DecaySpec: sigma must exceed (n-1)/2 + s");
}

}  // namespace ahmass
