#pragma once

// Fields over a chart with two derivative paths: closed-form jets (exact, via
// the forward-mode types in jets.hpp) or 4th-order central finite differences
// sized by the local chart scale.  Metric, extrinsic-curvature and
// perturbation fields all share the symmetric-tensor container.

#include <Eigen/Dense>

#include "ahmass/chart.hpp"
#include "ahmass/errors.hpp"
#include "ahmass/jets.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ahmass {

struct FdOptions {
  double rel_step = 1e-3;   // h = rel_step * local coordinate scale
  double margin = 10.0;     // refuse points closer than margin*h to the boundary
};

// Symmetric pair index for (k,l) with k <= l.
inline int sym_index(int k, int l, int n) {
  if (k > l) std::swap(k, l);
  return k * n - k * (k - 1) / 2 + (l - k);
}
inline int sym_count(int n) { return n * (n + 1) / 2; }

struct ScalarJet {
  double v = 0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
};

struct CovectorJet {
  Eigen::VectorXd v;
  Eigen::MatrixXd d;  // d(a,b) = partial_a v_b
};

struct TensorJet {
  Eigen::MatrixXd v;
  std::vector<Eigen::MatrixXd> d1;  // d1[k](i,j) = partial_k g_ij
  std::vector<Eigen::MatrixXd> d2;  // d2[sym_index(k,l)](i,j) = partial_k partial_l g_ij
  const Eigen::MatrixXd& second(int k, int l, int n) const { return d2[sym_index(k, l, n)]; }
};

// Generic symmetric-component bundle used by templated component functions.
template <class S>
struct SymComponents {
  int n = 0;
  std::vector<S> a;
  explicit SymComponents(int dim) : n(dim), a(sym_count(dim)) {}
  S& at(int i, int j) { return a[sym_index(i, j, n)]; }
  const S& at(int i, int j) const { return a[sym_index(i, j, n)]; }
};

class ScalarField {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using JetFn = std::function<ScalarJet(const Eigen::VectorXd&)>;

  ScalarField() = default;
  ScalarField(Chart chart, int n, ValueFn value) : chart_(chart), n_(n), value_(std::move(value)) {}
  ScalarField(Chart chart, int n, ValueFn value, JetFn jet)
      : chart_(chart), n_(n), value_(std::move(value)), jet_(std::move(jet)) {}

  // Builds value and exact-jet closures from one scalar-generic callable
  // (invocable on std::vector<double> and on std::vector<JetN>).
  template <class F>
  static ScalarField from_expr(Chart chart, int n, F f) {
    ValueFn value = [f](const Eigen::VectorXd& x) {
      std::vector<double> v(x.data(), x.data() + x.size());
      return f(v);
    };
    JetFn jet = [f, n](const Eigen::VectorXd& x) {
      std::vector<JetN> v(n);
      for (int i = 0; i < n; ++i) v[i] = JetN::variable(n, i, x[i]);
      JetN r = f(v);
      return ScalarJet{r.v, r.g, r.h};
    };
    return ScalarField(chart, n, std::move(value), std::move(jet));
  }

  Chart chart() const { return chart_; }
  int dim() const { return n_; }
  int deriv_order() const { return jet_ ? 2 : 0; }
  bool valid() const { return static_cast<bool>(value_); }

  double value(const ChartPoint& p) const;
  ScalarJet jet(const ChartPoint& p, const FdOptions& opt = {}) const;

  ScalarField without_jets() const { return ScalarField(chart_, n_, value_); }

 private:
  Chart chart_ = Chart::Euclidean;
  int n_ = 0;
  ValueFn value_;
  JetFn jet_;
};

class CovectorField {
 public:
  using ValueFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using JetFn = std::function<CovectorJet(const Eigen::VectorXd&)>;

  CovectorField() = default;
  CovectorField(Chart chart, int n, ValueFn value) : chart_(chart), n_(n), value_(std::move(value)) {}
  CovectorField(Chart chart, int n, ValueFn value, JetFn jet)
      : chart_(chart), n_(n), value_(std::move(value)), jet_(std::move(jet)) {}

  template <class F>
  static CovectorField from_expr(Chart chart, int n, F f) {
    ValueFn value = [f, n](const Eigen::VectorXd& x) {
      std::vector<double> v(x.data(), x.data() + x.size());
      std::vector<double> out = f(v);
      return Eigen::Map<const Eigen::VectorXd>(out.data(), n).eval();
    };
    JetFn jet = [f, n](const Eigen::VectorXd& x) {
      std::vector<JetN> v(n);
      for (int i = 0; i < n; ++i) v[i] = JetN::variable(n, i, x[i]);
      std::vector<JetN> out = f(v);
      CovectorJet cj;
      cj.v.resize(n);
      cj.d.resize(n, n);
      for (int b = 0; b < n; ++b) {
        cj.v[b] = out[b].v;
        cj.d.col(b) = out[b].g;  // d(a,b) = partial_a out_b
      }
      return cj;
    };
    return CovectorField(chart, n, std::move(value), std::move(jet));
  }

  Chart chart() const { return chart_; }
  int dim() const { return n_; }
  int deriv_order() const { return jet_ ? 1 : 0; }
  bool valid() const { return static_cast<bool>(value_); }

  Eigen::VectorXd value(const ChartPoint& p) const;
  CovectorJet jet(const ChartPoint& p, const FdOptions& opt = {}) const;

  CovectorField without_jets() const { return CovectorField(chart_, n_, value_); }

 private:
  Chart chart_ = Chart::Euclidean;
  int n_ = 0;
  ValueFn value_;
  JetFn jet_;
};

struct CurvatureResult {
  Eigen::MatrixXd ricci;      // R_ij
  double scalar = 0.0;        // g^{ij} R_ij
  Eigen::MatrixXd trace_free; // R_ij - (scalar/n) g_ij
};

// Symmetric 2-tensor field.  MetricField is the same container; SPD is
// enforced where an inverse is taken.
//
// A metric field may carry a closed-form curvature hook.  The hook returns
// nullopt at points where no closed form applies; curvature code then falls
// back to the jet algebra.  Model metrics register hooks because their
// trace-free Ricci is exactly zero, which the jet route can only reproduce
// up to a rounding residue that grows with the coordinate magnitudes.
class TensorField {
 public:
  using ValueFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
  using JetFn = std::function<TensorJet(const Eigen::VectorXd&)>;
  using CurvatureFn =
      std::function<std::optional<CurvatureResult>(const Eigen::VectorXd&)>;

  TensorField() = default;
  TensorField(Chart chart, int n, ValueFn value) : chart_(chart), n_(n), value_(std::move(value)) {}
  TensorField(Chart chart, int n, ValueFn value, JetFn jet)
      : chart_(chart), n_(n), value_(std::move(value)), jet_(std::move(jet)) {}

  template <class F>  // F: (const std::vector<S>&, SymComponents<S>&) -> void
  static TensorField from_expr(Chart chart, int n, F f) {
    ValueFn value = [f, n](const Eigen::VectorXd& x) {
      std::vector<double> v(x.data(), x.data() + x.size());
      SymComponents<double> c(n);
      f(v, c);
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = c.at(i, j);
      return m;
    };
    JetFn jet = [f, n](const Eigen::VectorXd& x) {
      std::vector<JetN> v(n);
      for (int i = 0; i < n; ++i) v[i] = JetN::variable(n, i, x[i]);
      SymComponents<JetN> c(n);
      for (auto& e : c.a) e = JetN(n);
      f(v, c);
      TensorJet out;
      out.v.resize(n, n);
      out.d1.assign(n, Eigen::MatrixXd(n, n));
      out.d2.assign(sym_count(n), Eigen::MatrixXd(n, n));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const JetN& e = c.at(i, j);
          out.v(i, j) = out.v(j, i) = e.v;
          for (int k = 0; k < n; ++k) out.d1[k](i, j) = out.d1[k](j, i) = e.g[k];
          for (int k = 0; k < n; ++k)
            for (int l = k; l < n; ++l) {
              Eigen::MatrixXd& m = out.d2[sym_index(k, l, n)];
              m(i, j) = m(j, i) = e.h(k, l);
            }
        }
      return out;
    };
    return TensorField(chart, n, std::move(value), std::move(jet));
  }

  Chart chart() const { return chart_; }
  int dim() const { return n_; }
  int deriv_order() const { return jet_ ? 2 : 0; }
  bool valid() const { return static_cast<bool>(value_); }

  Eigen::MatrixXd value(const ChartPoint& p) const;
  TensorJet jet(const ChartPoint& p, const FdOptions& opt = {}) const;

  TensorField without_jets() const { return TensorField(chart_, n_, value_); }
  void set_jet_fn(JetFn j) { jet_ = std::move(j); }

  void set_curvature_fn(CurvatureFn c) { curv_ = std::move(c); }
  const CurvatureFn& curvature_fn() const { return curv_; }

 private:
  Chart chart_ = Chart::Euclidean;
  int n_ = 0;
  ValueFn value_;
  JetFn jet_;
  CurvatureFn curv_;
};

using MetricField = TensorField;

// a*A + b*B; exact jets when both carry them.
TensorField tensor_combine(const TensorField& A, double a, const TensorField& B, double b);

// chi*A + (1-chi)*B with a scalar cutoff field; exact jets when available.
TensorField cutoff_combine(const ScalarField& chi, const TensorField& A, const TensorField& B);

// Finite-difference step sizes for a point (per coordinate), with margin and
// underflow checks.
Eigen::VectorXd fd_steps(const ChartPoint& p, const FdOptions& opt);

}  // namespace ahmass
