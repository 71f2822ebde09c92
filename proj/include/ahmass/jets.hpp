#pragma once

// Forward-mode truncated Taylor scalars, second order.  Jet1 carries
// (f, f', f'') of a univariate expression; JetN carries value, gradient and
// Hessian in n variables.  Closed-form fields evaluated on these types get
// exact first and second derivatives, which the curvature pipeline needs at
// accuracies plain finite differences cannot reach near chart boundaries.

#include <Eigen/Dense>
#include <cmath>

namespace ahmass {

struct Jet1 {
  double v = 0, d1 = 0, d2 = 0;

  Jet1() = default;
  Jet1(double value) : v(value) {}
  Jet1(double value, double first, double second) : v(value), d1(first), d2(second) {}

  static Jet1 variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2};
}

// f(u): chain rule with scalar outer derivatives.
inline Jet1 compose(const Jet1& u, double f, double df, double ddf) {
  return {f, df * u.d1, df * u.d2 + ddf * u.d1 * u.d1};
}

inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  const double iv = 1.0 / b.v;
  return a * compose(b, iv, -iv * iv, 2 * iv * iv * iv);
}
inline Jet1 operator+(const Jet1& a, double c) { return {a.v + c, a.d1, a.d2}; }
inline Jet1 operator+(double c, const Jet1& a) { return a + c; }
inline Jet1 operator-(const Jet1& a, double c) { return {a.v - c, a.d1, a.d2}; }
inline Jet1 operator-(double c, const Jet1& a) { return {c - a.v, -a.d1, -a.d2}; }
inline Jet1 operator*(const Jet1& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
inline Jet1 operator*(double c, const Jet1& a) { return a * c; }
inline Jet1 operator/(const Jet1& a, double c) { return a * (1.0 / c); }
inline Jet1 operator/(double c, const Jet1& b) { return Jet1(c) / b; }

inline Jet1 sqrt(const Jet1& u) {
  const double s = std::sqrt(u.v);
  return compose(u, s, 0.5 / s, -0.25 / (s * u.v));
}
inline Jet1 pow(const Jet1& u, double p) {
  const double f = std::pow(u.v, p);
  return compose(u, f, p * f / u.v, p * (p - 1) * f / (u.v * u.v));
}
inline Jet1 exp(const Jet1& u) {
  const double e = std::exp(u.v);
  return compose(u, e, e, e);
}
inline Jet1 log(const Jet1& u) {
  return compose(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}
inline Jet1 sin(const Jet1& u) { return compose(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v)); }
inline Jet1 cos(const Jet1& u) { return compose(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v)); }

// Multivariate second-order jet.  Hessian kept dense and symmetric.
class JetN {
 public:
  double v = 0;
  Eigen::VectorXd g;   // gradient, size n
  Eigen::MatrixXd h;   // Hessian, n x n

  JetN() = default;
  explicit JetN(int n) : v(0), g(Eigen::VectorXd::Zero(n)), h(Eigen::MatrixXd::Zero(n, n)) {}
  JetN(int n, double value) : JetN(n) { v = value; }

  int dim() const { return static_cast<int>(g.size()); }

  static JetN constant(int n, double c) { return JetN(n, c); }
  static JetN variable(int n, int i, double x) {
    JetN j(n, x);
    j.g[i] = 1.0;
    return j;
  }
};

inline JetN operator+(const JetN& a, const JetN& b) {
  JetN r(a.dim());
  r.v = a.v + b.v; r.g = a.g + b.g; r.h = a.h + b.h;
  return r;
}
inline JetN operator-(const JetN& a, const JetN& b) {
  JetN r(a.dim());
  r.v = a.v - b.v; r.g = a.g - b.g; r.h = a.h - b.h;
  return r;
}
inline JetN operator-(const JetN& a) {
  JetN r(a.dim());
  r.v = -a.v; r.g = -a.g; r.h = -a.h;
  return r;
}
inline JetN operator*(const JetN& a, const JetN& b) {
  JetN r(a.dim());
  r.v = a.v * b.v;
  r.g = a.g * b.v + b.g * a.v;
  r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}
inline JetN compose(const JetN& u, double f, double df, double ddf) {
  JetN r(u.dim());
  r.v = f;
  r.g = df * u.g;
  r.h = df * u.h + ddf * (u.g * u.g.transpose());
  return r;
}
inline JetN operator/(const JetN& a, const JetN& b) {
  const double iv = 1.0 / b.v;
  return a * compose(b, iv, -iv * iv, 2 * iv * iv * iv);
}
inline JetN operator+(const JetN& a, double c) { JetN r = a; r.v += c; return r; }
inline JetN operator+(double c, const JetN& a) { return a + c; }
inline JetN operator-(const JetN& a, double c) { JetN r = a; r.v -= c; return r; }
inline JetN operator-(double c, const JetN& a) { return (-a) + c; }
inline JetN operator*(const JetN& a, double c) {
  JetN r(a.dim());
  r.v = a.v * c; r.g = a.g * c; r.h = a.h * c;
  return r;
}
inline JetN operator*(double c, const JetN& a) { return a * c; }
inline JetN operator/(const JetN& a, double c) { return a * (1.0 / c); }
inline JetN operator/(double c, const JetN& b) {
  const double iv = 1.0 / b.v;
  return compose(b, c * iv, -c * iv * iv, 2 * c * iv * iv * iv);
}

inline JetN sqrt(const JetN& u) {
  const double s = std::sqrt(u.v);
  return compose(u, s, 0.5 / s, -0.25 / (s * u.v));
}
inline JetN pow(const JetN& u, double p) {
  const double f = std::pow(u.v, p);
  return compose(u, f, p * f / u.v, p * (p - 1) * f / (u.v * u.v));
}
inline JetN exp(const JetN& u) {
  const double e = std::exp(u.v);
  return compose(u, e, e, e);
}
inline JetN log(const JetN& u) { return compose(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v)); }
inline JetN sin(const JetN& u) { return compose(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v)); }
inline JetN cos(const JetN& u) { return compose(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v)); }

// acos for chart transitions; derivative blows up at |u| = 1.
inline JetN acos(const JetN& u) {
  const double s = 1.0 - u.v * u.v;
  const double r = std::sqrt(s);
  return compose(u, std::acos(u.v), -1.0 / r, -u.v / (r * s));
}

// Plain-double passthroughs: scalar-generic code (templated on double / Jet1
// / JetN) calls these unqualified, and unqualified lookup inside this
// namespace would otherwise stop at the jet overloads.
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double p) { return std::pow(x, p); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double acos(double x) { return std::acos(x); }

}  // namespace ahmass
