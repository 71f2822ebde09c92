#include "ahmass/fields.hpp"

#include <cmath>
#include <limits>

namespace ahmass {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_point(Chart chart, int n, const ChartPoint& p, const char* who) {
  if (p.chart != chart || p.dim() != n)
    throw ChartDomainError(std::string(who) + ": point chart/dimension mismatch");
}

// 4th-order central stencils.
// first derivative: offsets {-2,-1,1,2}h, weights {1,-8,8,-1}/(12h)
// second derivative: offsets {-2,-1,0,1,2}h, weights {-1,16,-30,16,-1}/(12h^2)

template <class T, class Eval>
T fd_first(const Eval& f, const Eigen::VectorXd& x, int k, double h) {
  Eigen::VectorXd q = x;
  q[k] = x[k] - 2 * h; T m2 = f(q);
  q[k] = x[k] - h;     T m1 = f(q);
  q[k] = x[k] + h;     T p1 = f(q);
  q[k] = x[k] + 2 * h; T p2 = f(q);
  return (m2 - p2 + 8.0 * (p1 - m1)) / (12.0 * h);
}

template <class T, class Eval>
T fd_second_diag(const Eval& f, const T& center, const Eigen::VectorXd& x, int k, double h) {
  Eigen::VectorXd q = x;
  q[k] = x[k] - 2 * h; T m2 = f(q);
  q[k] = x[k] - h;     T m1 = f(q);
  q[k] = x[k] + h;     T p1 = f(q);
  q[k] = x[k] + 2 * h; T p2 = f(q);
  return (-(m2 + p2) + 16.0 * (m1 + p1) - 30.0 * center) / (12.0 * h * h);
}

template <class T, class Eval>
T fd_second_mixed(const Eval& f, const Eigen::VectorXd& x, int k, int l, double hk, double hl) {
  static const double off[4] = {-2, -1, 1, 2};
  static const double wgt[4] = {1, -8, 8, -1};
  Eigen::VectorXd q = x;
  q[k] = x[k] + off[0] * hk;
  q[l] = x[l] + off[0] * hl;
  T acc = (wgt[0] * wgt[0]) * f(q);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      q[k] = x[k] + off[a] * hk;
      q[l] = x[l] + off[b] * hl;
      acc = acc + (wgt[a] * wgt[b]) * f(q);
    }
  return acc / (144.0 * hk * hl);
}

}  // namespace

Eigen::VectorXd fd_steps(const ChartPoint& p, const FdOptions& opt) {
  Eigen::VectorXd scale = fd_coordinate_scales(p);  // throws off-domain
  const int n = p.dim();
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) {
    double hi = opt.rel_step * scale[i];
    if (!(hi > 0) || opt.margin * hi > scale[i])
      throw DomainMarginError("stencil would leave the chart (point too close to boundary)");
    if (hi <= 4 * kEps * std::max(1.0, std::abs(p.x[i])))
      throw DomainMarginError("finite-difference step underflows at this point");
    // snap so that x + h is exactly representable relative to x
    volatile double xph = p.x[i] + hi;
    h[i] = xph - p.x[i];
  }
  return h;
}

double ScalarField::value(const ChartPoint& p) const {
  check_point(chart_, n_, p, "ScalarField");
  return value_(p.x);
}

ScalarJet ScalarField::jet(const ChartPoint& p, const FdOptions& opt) const {
  check_point(chart_, n_, p, "ScalarField");
  if (jet_) return jet_(p.x);
  const int n = n_;
  Eigen::VectorXd h = fd_steps(p, opt);
  ScalarJet out;
  out.v = value_(p.x);
  out.g.resize(n);
  out.h.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.g[k] = fd_first<double>(value_, p.x, k, h[k]);
    out.h(k, k) = fd_second_diag<double>(value_, out.v, p.x, k, h[k]);
    for (int l = k + 1; l < n; ++l) {
      double m = fd_second_mixed<double>(value_, p.x, k, l, h[k], h[l]);
      out.h(k, l) = out.h(l, k) = m;
    }
  }
  return out;
}

Eigen::VectorXd CovectorField::value(const ChartPoint& p) const {
  check_point(chart_, n_, p, "CovectorField");
  return value_(p.x);
}

CovectorJet CovectorField::jet(const ChartPoint& p, const FdOptions& opt) const {
  check_point(chart_, n_, p, "CovectorField");
  if (jet_) return jet_(p.x);
  const int n = n_;
  Eigen::VectorXd h = fd_steps(p, opt);
  CovectorJet out;
  out.v = value_(p.x);
  out.d.resize(n, n);
  for (int a = 0; a < n; ++a)
    out.d.row(a) = fd_first<Eigen::VectorXd>(value_, p.x, a, h[a]).transpose();
  return out;
}

Eigen::MatrixXd TensorField::value(const ChartPoint& p) const {
  check_point(chart_, n_, p, "TensorField");
  return value_(p.x);
}

TensorJet TensorField::jet(const ChartPoint& p, const FdOptions& opt) const {
  check_point(chart_, n_, p, "TensorField");
  if (jet_) return jet_(p.x);
  const int n = n_;
  Eigen::VectorXd h = fd_steps(p, opt);
  TensorJet out;
  out.v = value_(p.x);
  out.d1.assign(n, Eigen::MatrixXd());
  out.d2.assign(sym_count(n), Eigen::MatrixXd());
  for (int k = 0; k < n; ++k) {
    out.d1[k] = fd_first<Eigen::MatrixXd>(value_, p.x, k, h[k]);
    out.d2[sym_index(k, k, n)] = fd_second_diag<Eigen::MatrixXd>(value_, out.v, p.x, k, h[k]);
    for (int l = k + 1; l < n; ++l)
      out.d2[sym_index(k, l, n)] =
          fd_second_mixed<Eigen::MatrixXd>(value_, p.x, k, l, h[k], h[l]);
  }
  return out;
}

namespace {

bool jet_is_zero(const TensorJet& j) {
  if (j.v.size() == 0 || j.v.cwiseAbs().maxCoeff() != 0.0) return false;
  for (const auto& m : j.d1)
    if (m.cwiseAbs().maxCoeff() != 0.0) return false;
  for (const auto& m : j.d2)
    if (m.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

}  // namespace

TensorField tensor_combine(const TensorField& A, double a, const TensorField& B, double b) {
  if (A.chart() != B.chart() || A.dim() != B.dim())
    throw ChartDomainError("tensor_combine: mismatched fields");
  const int n = A.dim();
  TensorField::ValueFn value = [A, B, a, b](const Eigen::VectorXd& x) {
    ChartPoint p{A.chart(), x};
    return (a * A.value(p) + b * B.value(p)).eval();
  };
  TensorField out(A.chart(), n, value);
  if (A.deriv_order() >= 2 && B.deriv_order() >= 2) {
    out.set_jet_fn([A, B, a, b, n](const Eigen::VectorXd& x) {
      ChartPoint p{A.chart(), x};
      TensorJet ja = A.jet(p), jb = B.jet(p);
      TensorJet r;
      r.v = a * ja.v + b * jb.v;
      r.d1.resize(n);
      for (int k = 0; k < n; ++k) r.d1[k] = a * ja.d1[k] + b * jb.d1[k];
      r.d2.resize(sym_count(n));
      for (int s = 0; s < sym_count(n); ++s) r.d2[s] = a * ja.d2[s] + b * jb.d2[s];
      return r;
    });
  }
  // The hook survives at points where the other term's 2-jet vanishes
  // identically: there the combined jet coincides with the hooked field's.
  if (A.curvature_fn() && a == 1.0 && B.deriv_order() >= 2) {
    out.set_curvature_fn(
        [A, B](const Eigen::VectorXd& x) -> std::optional<CurvatureResult> {
          if (jet_is_zero(B.jet({B.chart(), x}))) return A.curvature_fn()(x);
          return std::nullopt;
        });
  } else if (B.curvature_fn() && b == 1.0 && A.deriv_order() >= 2) {
    out.set_curvature_fn(
        [A, B](const Eigen::VectorXd& x) -> std::optional<CurvatureResult> {
          if (jet_is_zero(A.jet({A.chart(), x}))) return B.curvature_fn()(x);
          return std::nullopt;
        });
  }
  return out;
}

TensorField cutoff_combine(const ScalarField& chi, const TensorField& A, const TensorField& B) {
  if (A.chart() != B.chart() || A.dim() != B.dim() || chi.chart() != A.chart())
    throw ChartDomainError("cutoff_combine: mismatched fields");
  const int n = A.dim();
  TensorField::ValueFn value = [chi, A, B](const Eigen::VectorXd& x) {
    ChartPoint p{A.chart(), x};
    double c = chi.value(p);
    return (c * A.value(p) + (1.0 - c) * B.value(p)).eval();
  };
  TensorField out(A.chart(), n, value);
  if (chi.deriv_order() >= 2 && A.deriv_order() >= 2 && B.deriv_order() >= 2) {
    out.set_jet_fn([chi, A, B, n](const Eigen::VectorXd& x) {
      ChartPoint p{A.chart(), x};
      ScalarJet c = chi.jet(p);
      TensorJet ja = A.jet(p), jb = B.jet(p);
      TensorJet r;
      Eigen::MatrixXd diff = ja.v - jb.v;
      r.v = c.v * ja.v + (1.0 - c.v) * jb.v;
      r.d1.resize(n);
      for (int k = 0; k < n; ++k)
        r.d1[k] = c.g[k] * diff + c.v * ja.d1[k] + (1.0 - c.v) * jb.d1[k];
      r.d2.resize(sym_count(n));
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          int s = sym_index(k, l, n);
          r.d2[s] = c.h(k, l) * diff + c.g[k] * (ja.d1[l] - jb.d1[l]) +
                    c.g[l] * (ja.d1[k] - jb.d1[k]) + c.v * ja.d2[s] +
                    (1.0 - c.v) * jb.d2[s];
        }
      return r;
    });
  }
  return out;
}

}  // namespace ahmass
