#include "ahmass/chart.hpp"

#include <numbers>

namespace ahmass {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double atan2j(double y, double x) { return std::atan2(y, x); }

JetN atan2j(const JetN& y, const JetN& x) {
  const double A = x.v, B = y.v;
  const double r2 = A * A + B * B;
  JetN out(y.dim());
  out.v = std::atan2(B, A);
  out.g = (A * y.g - B * x.g) / r2;
  Eigen::MatrixXd dN = A * y.h - B * x.h + y.g * x.g.transpose() - x.g * y.g.transpose();
  Eigen::VectorXd dr2 = 2.0 * (A * x.g + B * y.g);
  Eigen::MatrixXd H =
      dN / r2 - ((A * y.g - B * x.g) * dr2.transpose()) / (r2 * r2);
  out.h = 0.5 * (H + H.transpose());
  return out;
}

template <class S>
std::vector<S> unit_to_angles_t(const std::vector<S>& u) {
  const int n = static_cast<int>(u.size());
  const int d = n - 1;
  std::vector<S> theta(d);
  for (int k = 0; k + 1 < d; ++k) {
    // remaining prefix u[0 .. n-2-k], pole coordinate u[n-1-k]
    S s2 = u[0] * u[0];
    for (int i = 1; i <= n - 2 - k; ++i) s2 = s2 + u[i] * u[i];
    theta[k] = atan2j(sqrt(s2), u[n - 1 - k]);
  }
  theta[d - 1] = atan2j(u[0], u[1]);
  return theta;
}

// double specialization (no jets; keeps plain evaluation cheap and exact)
std::vector<double> unit_to_angles_d(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  const int d = n - 1;
  std::vector<double> theta(d);
  for (int k = 0; k + 1 < d; ++k) {
    double s2 = 0;
    for (int i = 0; i <= n - 2 - k; ++i) s2 += u[i] * u[i];
    theta[k] = std::atan2(std::sqrt(s2), u[n - 1 - k]);
  }
  double a = std::atan2(u[0], u[1]);
  if (a < 0) a += kTwoPi;
  theta[d - 1] = a;
  return theta;
}

template <class S>
std::vector<S> ball_to_polar_t(const std::vector<S>& x) {
  const int n = static_cast<int>(x.size());
  S rho2 = x[0] * x[0];
  for (int i = 1; i < n; ++i) rho2 = rho2 + x[i] * x[i];
  S rho = sqrt(rho2);
  std::vector<S> u(n);
  for (int i = 0; i < n; ++i) u[i] = x[i] / rho;
  std::vector<S> theta = unit_to_angles_t(u);
  std::vector<S> out(n);
  out[0] = 2.0 * rho / (1.0 - rho2);
  for (int k = 0; k + 1 < n; ++k) out[k + 1] = theta[k];
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}
Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

void check_dim(const ChartPoint& p) {
  if (p.dim() < 2) throw ChartDomainError("chart points need dimension >= 2");
}

ChartPoint transition_once(const ChartPoint& p, Chart target);

}  // namespace

const char* chart_name(Chart c) {
  switch (c) {
    case Chart::HalfSpace: return "half-space";
    case Chart::Ball: return "ball";
    case Chart::Polar: return "polar";
    case Chart::Euclidean: return "euclidean";
  }
  return "?";
}

ChartPoint make_halfspace(const Eigen::VectorXd& wz) {
  ChartPoint p{Chart::HalfSpace, wz};
  check_dim(p);
  if (!(wz[wz.size() - 1] > 0))
    throw ChartDomainError("half-space chart needs z > 0");
  return p;
}

ChartPoint make_ball(const Eigen::VectorXd& x) {
  ChartPoint p{Chart::Ball, x};
  check_dim(p);
  if (!(x.norm() < 1.0)) throw ChartDomainError("ball chart needs |x| < 1");
  return p;
}

ChartPoint make_polar(const Eigen::VectorXd& rtheta) {
  ChartPoint p{Chart::Polar, rtheta};
  check_dim(p);
  // r = 0 is tolerated as the origin marker produced by chart_transition;
  // metric evaluations reject it via the fd margin checks.
  if (!(rtheta[0] >= 0)) throw ChartDomainError("polar chart needs r >= 0");
  return p;
}

ChartPoint make_euclidean(const Eigen::VectorXd& x) {
  ChartPoint p{Chart::Euclidean, x};
  if (p.dim() < 1) throw ChartDomainError("empty point");
  return p;
}

Eigen::VectorXd fd_coordinate_scales(const ChartPoint& p) {
  const int n = p.dim();
  Eigen::VectorXd s(n);
  switch (p.chart) {
    case Chart::HalfSpace: {
      double z = p.x[n - 1];
      if (!(z > 0)) throw DomainMarginError("half-space point with z <= 0");
      s.setConstant(z);
      break;
    }
    case Chart::Ball: {
      double m = 1.0 - p.x.norm();
      if (!(m > 0)) throw DomainMarginError("ball point with |x| >= 1");
      s.setConstant(m);
      break;
    }
    case Chart::Polar: {
      double r = p.x[0];
      if (!(r > 0)) throw DomainMarginError("polar origin marker has no stencil scale");
      s.setConstant(1.0);
      s[0] = std::sqrt(1.0 + r * r);
      break;
    }
    case Chart::Euclidean:
      s.setConstant(1.0);
      break;
  }
  return s;
}

Eigen::VectorXd angles_to_unit(const Eigen::VectorXd& theta) {
  std::vector<double> t = to_std(theta);
  return to_eigen(detail::angles_to_unit_t(t));
}

Eigen::VectorXd unit_to_angles(const Eigen::VectorXd& u) {
  return to_eigen(unit_to_angles_d(to_std(u)));
}

namespace {

ChartPoint transition_once(const ChartPoint& p, Chart target) {
  const int n = p.dim();
  if (p.chart == Chart::Ball && target == Chart::HalfSpace) {
    double s = p.x.squaredNorm() - 2.0 * p.x[n - 1] + 1.0;
    if (s < 1e-300)
      throw ChartDomainError("ball -> half-space undefined at the deleted point e_n");
    return ChartPoint{Chart::HalfSpace, to_eigen(detail::ball_to_halfspace(to_std(p.x)))};
  }
  if (p.chart == Chart::HalfSpace && target == Chart::Ball) {
    return ChartPoint{Chart::Ball, to_eigen(detail::halfspace_to_ball(to_std(p.x)))};
  }
  if (p.chart == Chart::Ball && target == Chart::Polar) {
    double rho = p.x.norm();
    if (rho < 1e-14) {
      // origin marker: r = 0, angle convention irrelevant there
      Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
      return ChartPoint{Chart::Polar, out};
    }
    return ChartPoint{Chart::Polar, to_eigen(ball_to_polar_t(to_std(p.x)))};
  }
  if (p.chart == Chart::Polar && target == Chart::Ball) {
    if (p.x[0] == 0.0)
      return ChartPoint{Chart::Ball, Eigen::VectorXd::Zero(n)};
    return ChartPoint{Chart::Ball, to_eigen(detail::polar_to_ball(to_std(p.x)))};
  }
  throw ChartDomainError("unsupported single-step transition");
}

}  // namespace

ChartPoint chart_transition(const ChartPoint& p, Chart target) {
  if (p.chart == Chart::Euclidean || target == Chart::Euclidean)
    throw ChartDomainError("no transition defined for the euclidean chart");
  if (p.chart == target) return p;
  // Ball is the hub chart.
  if (p.chart == Chart::Ball || target == Chart::Ball) return transition_once(p, target);
  return transition_once(transition_once(p, Chart::Ball), target);
}

Eigen::MatrixXd transition_jacobian(const ChartPoint& p, Chart target) {
  const int n = p.dim();
  std::vector<JetN> in(n);
  for (int i = 0; i < n; ++i) in[i] = JetN::variable(n, i, p.x[i]);

  auto run = [&](const std::vector<JetN>& v, Chart from, Chart to) -> std::vector<JetN> {
    if (from == Chart::Ball && to == Chart::HalfSpace) return detail::ball_to_halfspace(v);
    if (from == Chart::HalfSpace && to == Chart::Ball) return detail::halfspace_to_ball(v);
    if (from == Chart::Ball && to == Chart::Polar) return ball_to_polar_t(v);
    if (from == Chart::Polar && to == Chart::Ball) return detail::polar_to_ball(v);
    throw ChartDomainError("unsupported single-step transition");
  };

  std::vector<JetN> out;
  if (p.chart == target) {
    out = in;
  } else if (p.chart == Chart::Ball || target == Chart::Ball) {
    out = run(in, p.chart, target);
  } else {
    out = run(run(in, p.chart, Chart::Ball), Chart::Ball, target);
  }

  Eigen::MatrixXd J(n, n);
  for (int a = 0; a < n; ++a) J.row(a) = out[a].g.transpose();
  return J;
}

}  // namespace ahmass
