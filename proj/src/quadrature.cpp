#include "ahmass/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ahmass/chart.hpp"
#include "ahmass/rng.hpp"

namespace ahmass {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double sphere_area(int d) {
  // 2 pi^{(d+1)/2} / Gamma((d+1)/2)
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

void gauss_gegenbauer(int count, double lambda, Eigen::VectorXd& nodes,
                      Eigen::VectorXd& weights) {
  if (count < 1) throw ConfigError("gauss_gegenbauer: need at least one node");
  // zeroth moment of (1-t^2)^(lambda-1/2)
  const double mu0 =
      std::sqrt(kPi) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double beta =
        k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
    T(k, k - 1) = T(k - 1, k) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  nodes = es.eigenvalues();
  weights.resize(count);
  for (int i = 0; i < count; ++i) {
    const double phi0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * phi0 * phi0;
  }
}

SphereQuadrature sphere_quadrature(int sphere_dim, int level) {
  if (sphere_dim < 1 || sphere_dim > 3)
    throw ConfigError("sphere_quadrature: product rule supports sphere dimensions 1..3");
  if (level < 2) level = 2;
  if (level % 2) ++level;
  const int d = sphere_dim;
  const int circle = 2 * level;

  // Gauss data per polar-type angle k = 0..d-2 (weight sin^{d-1-k}).
  std::vector<Eigen::VectorXd> tn(d - 1), tw(d - 1);
  for (int k = 0; k + 1 < d; ++k)
    gauss_gegenbauer(level, 0.5 * (d - 1 - k), tn[k], tw[k]);

  int total = circle;
  for (int k = 0; k + 1 < d; ++k) total *= level;

  SphereQuadrature q;
  q.sphere_dim = d;
  q.nodes.resize(total, d + 1);
  q.angles.resize(total, d);
  q.weights.resize(total);

  std::vector<int> idx(d - 1, 0);
  int row = 0;
  for (;;) {
    double wpolar = 1.0;
    Eigen::VectorXd theta(d);
    for (int k = 0; k + 1 < d; ++k) {
      theta[k] = std::acos(tn[k][idx[k]]);
      wpolar *= tw[k][idx[k]];
    }
    for (int j = 0; j < circle; ++j) {
      theta[d - 1] = (j + 0.5) * (2.0 * kPi / circle);
      q.angles.row(row) = theta;
      q.nodes.row(row) = angles_to_unit(theta);
      q.weights[row] = wpolar * (2.0 * kPi / circle);
      ++row;
    }
    int k = d - 2;
    while (k >= 0 && ++idx[k] == level) idx[k--] = 0;
    if (k < 0) break;
  }
  return q;
}

SphereQuadrature sphere_quadrature_mc(int sphere_dim, int samples, std::uint64_t seed) {
  if (sphere_dim < 1) throw ConfigError("sphere_quadrature_mc: bad dimension");
  if (samples < 1) throw ConfigError("sphere_quadrature_mc: bad sample count");
  const int d = sphere_dim;
  SphereQuadrature q;
  q.sphere_dim = d;
  q.monte_carlo = true;
  q.nodes.resize(samples, d + 1);
  q.angles.resize(samples, d);
  q.weights.setConstant(samples, sphere_area(d) / samples);
  DetRng rng(mix_seed(seed, 0x5f4d43u));
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd u = rng.unit_vector(d + 1);
    q.nodes.row(i) = u;
    q.angles.row(i) = unit_to_angles(u);
  }
  return q;
}

double pairwise_sum(const std::vector<double>& terms) {
  const std::size_t n = terms.size();
  if (n == 0) return 0.0;
  std::vector<double> buf = terms;
  std::size_t len = n;
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

double round_density(const Eigen::VectorXd& theta) {
  const int d = static_cast<int>(theta.size());
  double p = 1.0;
  for (int k = 0; k + 1 < d; ++k) p *= std::pow(std::sin(theta[k]), d - 1 - k);
  return p;
}

}  // namespace ahmass
