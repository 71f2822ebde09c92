#include "ahmass/families.hpp"

#include <cmath>

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

}  // namespace

MetricField schwarzschild_ads(double m, Chart chart, int n) {
  if (n < 3) throw ConfigError("schwarzschild_ads: n >= 3");
  if (chart == Chart::Polar)
    return MetricField::from_expr(chart, n, [m, n](const auto& x, auto& g) {
      const auto& r = x[0];
      auto f = 1.0 + r * r - 2.0 * m * pow(r, 2.0 - n);
      g.at(0, 0) = 1.0 / f;
      auto p = r * r;
      for (int k = 1; k < n; ++k) {
        g.at(k, k) = p;
        if (k + 1 < n) p = p * sin(x[k]) * sin(x[k]);
      }
    });
  if (chart == Chart::Ball)
    return MetricField::from_expr(chart, n, [m, n](const auto& x, auto& g) {
      auto s = squared_norm(x, n);
      auto omr = 1.0 - s;
      auto phi2 = 4.0 / (omr * omr);
      auto r2 = 4.0 * s / (omr * omr);
      auto rpow = pow(r2, 0.5 * (2.0 - n));  // r^{2-n}
      auto f = 1.0 + r2 - 2.0 * m * rpow;
      auto psi_over_s = 2.0 * m * rpow / (f * s);  // psi u_i u_j = psi_over_s x_i x_j
      for (int i = 0; i < n; ++i) {
        g.at(i, i) = phi2 * (1.0 + psi_over_s * x[i] * x[i]);
        for (int j = i + 1; j < n; ++j) g.at(i, j) = phi2 * psi_over_s * x[i] * x[j];
      }
    });
  throw ChartDomainError("schwarzschild_ads: Polar or Ball chart only");
}

TensorField decaying_perturbation(int n, double sigma, std::uint64_t seed) {
  if (n < 2) throw ConfigError("decaying_perturbation: n >= 2");
  DetRng rng(mix_seed(seed, 0x70657274u));
  const int waves = 2;
  std::vector<Eigen::VectorXd> k(waves);
  std::vector<Eigen::MatrixXd> c(waves), phase(waves);
  for (int w = 0; w < waves; ++w) {
    k[w].resize(n);
    for (int i = 0; i < n; ++i) k[w][i] = rng.uniform_int(-2, 2);
    c[w].resize(n, n);
    phase[w].resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        c[w](i, j) = c[w](j, i) = rng.uniform(-1.0, 1.0);
        phase[w](i, j) = phase[w](j, i) = rng.uniform(0.0, 6.283185307179586);
      }
  }
  return TensorField::from_expr(Chart::Ball, n, [n, sigma, k, c, phase](const auto& x, auto& e) {
    auto s = squared_norm(x, n);
    auto decay = pow(1.0 - s, sigma - 2.0);
    for (int w = 0; w < static_cast<int>(k.size()); ++w) {
      auto kx = x[0] * k[w][0];
      for (int i = 1; i < n; ++i) kx = kx + x[i] * k[w][i];
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          e.at(i, j) = e.at(i, j) + decay * c[w](i, j) * cos(kx + phase[w](i, j));
    }
  });
}

MetricField perturbed_hyperbolic(int n, double amplitude, double sigma, std::uint64_t seed) {
  return tensor_combine(hyperbolic_metric(Chart::Ball, n), 1.0,
                        decaying_perturbation(n, sigma, seed), amplitude);
}

MetricField lower_cap_perturbation(int n, double amplitude, double sigma) {
  MetricField b = hyperbolic_metric(Chart::Ball, n);
  TensorField bump = TensorField::from_expr(Chart::Ball, n, [n, sigma](const auto& x, auto& e) {
    auto s = squared_norm(x, n);
    if (value_of(s) < 0.09) return;  // identically zero near the origin
    auto rho = sqrt(s);
    auto cospol = x[n - 1] / rho;  // cos(polar angle), negative on the lower half
    auto ang = exp_step_down(cospol, -0.5, -0.1);
    auto rad = exp_step01((rho - 0.3) / 0.2);
    auto profile = pow(1.0 - s, sigma - 2.0) * ang * rad * (1.0 + 0.5 * cos(2.0 * x[0]));
    for (int i = 0; i < n; ++i) e.at(i, i) = profile;
  });
  return tensor_combine(b, 1.0, bump, amplitude);
}

}  // namespace ahmass
