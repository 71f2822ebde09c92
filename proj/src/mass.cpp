#include "ahmass/mass.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "ahmass/geometry.hpp"
#include "ahmass/hyperbolic.hpp"

namespace ahmass {

namespace {

// Shared per-point factor of the flux: everything except the V_mu weight.
double flux_factor(const MetricField& g, const ChartPoint& p, const FdOptions& opt) {
  const int n = p.dim();
  CurvatureResult cur = ricci(g, p, opt);
  if (cur.trace_free.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Eigen::MatrixXd gv = g.value(p);
  Eigen::MatrixXd mixed = metric_inverse(gv) * cur.trace_free;  // E^i_j
  if (p.chart == Chart::Polar) {
    const double r = p.x[0];
    const double dens = std::sqrt(gv.determinant()) / round_density(p.x.tail(n - 1));
    return -r * mixed(0, 0) * dens;
  }
  if (p.chart == Chart::Ball) {
    const double rho = p.x.norm();
    Eigen::VectorXd Z = dilation_field(p);
    Eigen::VectorXd u = p.x / rho;
    return -(mixed * Z).dot(u) * std::pow(rho, n - 1) * std::sqrt(gv.determinant());
  }
  throw ChartDomainError("mass flux: sphere integrals run in the Ball or Polar chart");
}

ChartPoint sphere_point(Chart chart, double r, const SphereQuadrature& quad, int i) {
  if (chart == Chart::Polar) {
    Eigen::VectorXd x(quad.sphere_dim + 1);
    x[0] = r;
    x.tail(quad.sphere_dim) = quad.angles.row(i);
    return ChartPoint{Chart::Polar, x};
  }
  const double rho = r / (1.0 + std::sqrt(1.0 + r * r));
  return ChartPoint{Chart::Ball, rho * quad.nodes.row(i).transpose()};
}

void for_each_node(int count, const std::function<void(int)>& body) {
  const int threads = worker_threads();
  if (threads <= 1 || count < 4 * threads) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("AHMASS_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

RadiusSchedule RadiusSchedule::dyadic(int k_min, int k_max, double q) {
  RadiusSchedule s;
  for (int k = k_min; k <= k_max; ++k) s.radii.push_back(std::ldexp(1.0, k));
  s.decay_exponent = q;
  return s;
}

double mass_integrand(const MetricField& g, const ScalarField& V, const ChartPoint& p,
                      const FdOptions& opt) {
  return V.value(p) * flux_factor(g, p, opt);
}

MassResult energy_momentum(const MetricField& g, const SphereQuadrature& quad,
                           const RadiusSchedule& sched, Hemisphere half,
                           const FdOptions& opt) {
  const int n = g.dim();
  if (quad.sphere_dim != n - 1)
    throw ConfigError("energy_momentum: quadrature sphere dimension must be n-1");
  if (sched.radii.size() < 2)
    throw ConfigError("energy_momentum: need at least two radii");
  for (std::size_t i = 1; i < sched.radii.size(); ++i)
    if (!(sched.radii[i] > sched.radii[i - 1]))
      throw ConfigError("energy_momentum: radii must increase");

  std::vector<ScalarField> V;
  V.reserve(n + 1);
  for (int mu = 0; mu <= n; ++mu) V.push_back(static_kid(mu, g.chart(), n));

  const int count = quad.count();
  std::vector<char> in_half(count, 1);
  if (half != Hemisphere::Full)
    for (int i = 0; i < count; ++i) {
      const bool upper = quad.nodes(i, n - 1) > 0;
      in_half[i] = (half == Hemisphere::Upper) ? upper : !upper;
    }

  MassResult out;
  out.radii = sched.radii;
  const int K = static_cast<int>(sched.radii.size());

  // raw sphere integrals
  std::vector<std::vector<double>> terms(n + 1, std::vector<double>(count, 0.0));
  for (int k = 0; k < K; ++k) {
    const double r = sched.radii[k];
    for_each_node(count, [&](int i) {
      if (!in_half[i]) {
        for (int mu = 0; mu <= n; ++mu) terms[mu][i] = 0.0;
        return;
      }
      ChartPoint p = sphere_point(g.chart(), r, quad, i);
      const double factor = quad.weights[i] * flux_factor(g, p, opt);
      for (int mu = 0; mu <= n; ++mu) terms[mu][i] = factor * V[mu].value(p);
    });
    Eigen::VectorXd I(n + 1);
    for (int mu = 0; mu <= n; ++mu) I[mu] = pairwise_sum(terms[mu]);
    out.integrals.push_back(I);

    if (quad.monte_carlo && k == K - 1) {
      // weighted-mean standard error per component, worst case reported
      double worst = 0;
      for (int mu = 0; mu <= n; ++mu) {
        const double mean = I[mu] / sphere_area(n - 1);
        double ss = 0;
        for (int i = 0; i < count; ++i) {
          const double f = terms[mu][i] / quad.weights[i];
          ss += (f - mean) * (f - mean);
        }
        const double se = sphere_area(n - 1) * std::sqrt(ss / count / count);
        worst = std::max(worst, se);
      }
      out.mc_standard_error = worst;
    }
  }

  // Neville tableau in t = r^-q toward t = 0
  const double q = sched.decay_exponent;
  Eigen::VectorXd t(K);
  for (int k = 0; k < K; ++k) t[k] = std::pow(sched.radii[k], -q);
  std::vector<std::vector<Eigen::VectorXd>> P(K);
  for (int i = 0; i < K; ++i) {
    P[i].resize(i + 1);
    P[i][0] = out.integrals[i];
    for (int j = 1; j <= i; ++j)
      P[i][j] = (t[i - j] * P[i][j - 1] - t[i] * P[i - 1][j - 1]) / (t[i - j] - t[i]);
    out.extrapolants.push_back(P[i][i]);
  }
  out.value = EnergyMomentum(P[K - 1][K - 1]);
  out.error_estimate = (P[K - 1][K - 1] - P[K - 2][K - 2]).cwiseAbs();

  // divergence: tableau differences growing twice in a row at the tail and
  // not explained by rounding noise
  if (K >= 4) {
    auto diff = [&](int i) {
      return (P[i][i] - P[i - 1][i - 1]).cwiseAbs().maxCoeff();
    };
    const double e2 = diff(K - 1), e1 = diff(K - 2), e0 = diff(K - 3);
    const double scale = 1.0 + P[K - 1][K - 1].cwiseAbs().maxCoeff();
    const double floor = std::max(1e-6 * scale, 4.0 * out.mc_standard_error);
    if (e2 > e1 && e1 > e0 && e2 > floor) {
      out.diverged = true;
      out.note = "extrapolation differences grew on the last two steps";
    }
  }
  return out;
}

EnergyMomentum momentum_from_aspect(const std::function<double(const Eigen::VectorXd&)>& mu,
                                    const SphereQuadrature& quad) {
  const int n = quad.sphere_dim + 1;
  const int count = quad.count();
  std::vector<std::vector<double>> terms(n + 1, std::vector<double>(count));
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd u = quad.nodes.row(i);
    const double f = quad.weights[i] * mu(u);
    terms[0][i] = f;
    for (int a = 0; a < n; ++a) terms[a + 1][i] = f * u[a];
  }
  Eigen::VectorXd m(n + 1);
  for (int a = 0; a <= n; ++a) m[a] = pairwise_sum(terms[a]);
  return EnergyMomentum(m);
}

}  // namespace ahmass
