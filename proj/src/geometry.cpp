#include "ahmass/geometry.hpp"

#include <cmath>

namespace ahmass {

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g) {
  const double scale = g.cwiseAbs().maxCoeff();
  if (!(scale > 0) || !std::isfinite(scale))
    throw DegenerateMetricError("metric is zero or non-finite");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DegenerateMetricError("metric is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw DegenerateMetricError("metric is not positive definite");
  const int n = static_cast<int>(g.rows());
  return llt.solve(Eigen::MatrixXd::Identity(n, n));
}

Christoffels christoffel_from_jet(const TensorJet& gj) {
  const int n = static_cast<int>(gj.v.rows());
  Eigen::MatrixXd ginv = metric_inverse(gj.v);
  Christoffels out;
  out.n = n;
  out.G.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (gj.d1[i](l, j) + gj.d1[j](i, l) - gj.d1[l](i, j));
        out.G[k](i, j) = out.G[k](j, i) = 0.5 * s;
      }
  return out;
}

Christoffels christoffel(const MetricField& g, const ChartPoint& p, const FdOptions& opt) {
  return christoffel_from_jet(g.jet(p, opt));
}

CurvatureResult ricci_from_jet(const TensorJet& gj) {
  const int n = static_cast<int>(gj.v.rows());
  Eigen::MatrixXd ginv = metric_inverse(gj.v);

  // d_a g^{kl} = -g^{km} (d_a g_mn) g^{nl}
  std::vector<Eigen::MatrixXd> dginv(n);
  for (int a = 0; a < n; ++a) dginv[a] = -ginv * gj.d1[a] * ginv;

  Christoffels ch = christoffel_from_jet(gj);

  // dG[a][k](i,j) = d_a Gamma^k_ij
  std::vector<std::vector<Eigen::MatrixXd>> dG(
      n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0;
          for (int l = 0; l < n; ++l) {
            s += dginv[a](k, l) * (gj.d1[i](l, j) + gj.d1[j](i, l) - gj.d1[l](i, j));
            s += ginv(k, l) * (gj.second(a, i, n)(l, j) + gj.second(a, j, n)(i, l) -
                               gj.second(a, l, n)(i, j));
          }
          dG[a][k](i, j) = dG[a][k](j, i) = 0.5 * s;
        }

  // c_l = Gamma^k_kl
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) c[l] += ch.G[k](k, l);

  CurvatureResult out;
  out.ricci.setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double r = 0;
      for (int k = 0; k < n; ++k) {
        r += dG[k][k](i, j) - dG[i][k](k, j);
        for (int l = 0; l < n; ++l) r -= ch.G[k](i, l) * ch.G[l](k, j);
      }
      for (int l = 0; l < n; ++l) r += c[l] * ch.G[l](i, j);
      out.ricci(i, j) = out.ricci(j, i) = r;
    }
  out.scalar = (ginv * out.ricci).trace();
  out.trace_free = out.ricci - (out.scalar / n) * gj.v;
  return out;
}

CurvatureResult ricci(const MetricField& g, const ChartPoint& p, const FdOptions& opt) {
  if (g.chart() != p.chart || g.dim() != p.dim())
    throw ChartDomainError("ricci: point chart/dimension mismatch");
  if (g.curvature_fn()) {
    if (auto c = g.curvature_fn()(p.x)) return *c;
  }
  return ricci_from_jet(g.jet(p, opt));
}

Eigen::MatrixXd covariant_hessian_from_jet(const TensorJet& gj, const ScalarJet& Nj) {
  const int n = static_cast<int>(gj.v.rows());
  Christoffels ch = christoffel_from_jet(gj);
  Eigen::MatrixXd H = Nj.h;
  for (int k = 0; k < n; ++k) H -= Nj.g[k] * ch.G[k];
  return H;
}

Eigen::MatrixXd covariant_hessian(const MetricField& g, const ScalarField& N,
                                  const ChartPoint& p, const FdOptions& opt) {
  return covariant_hessian_from_jet(g.jet(p, opt), N.jet(p, opt));
}

Eigen::MatrixXd killing_operator_from_jet(const TensorJet& gj, const CovectorJet& Yj) {
  const int n = static_cast<int>(gj.v.rows());
  Christoffels ch = christoffel_from_jet(gj);
  Eigen::MatrixXd L = Yj.d + Yj.d.transpose();
  for (int k = 0; k < n; ++k) L -= 2.0 * Yj.v[k] * ch.G[k];
  return L;
}

Eigen::MatrixXd killing_operator(const MetricField& g, const CovectorField& Y,
                                 const ChartPoint& p, const FdOptions& opt) {
  return killing_operator_from_jet(g.jet(p, opt), Y.jet(p, opt));
}

double trace(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T) {
  return (metric_inverse(g) * T).trace();
}

double tensor_norm_sq(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T) {
  Eigen::MatrixXd ginv = metric_inverse(g);
  return (ginv * T * ginv * T.transpose()).trace();
}

double tensor_norm(const Eigen::MatrixXd& g, const Eigen::MatrixXd& T) {
  return std::sqrt(std::max(0.0, tensor_norm_sq(g, T)));
}

double covector_norm_sq(const Eigen::MatrixXd& g, const Eigen::VectorXd& w) {
  return w.dot(metric_inverse(g) * w);
}

double covector_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& w) {
  return std::sqrt(std::max(0.0, covector_norm_sq(g, w)));
}

}  // namespace ahmass
