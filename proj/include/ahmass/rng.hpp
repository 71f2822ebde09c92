#pragma once

// Deterministic random numbers.  mt19937_64 output bits are specified by the
// standard, and the transformations below avoid std::*_distribution (whose
// streams vary between standard libraries), so every draw is reproducible
// bit-for-bit across platforms for a fixed seed.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ahmass {

class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform on (0,1), never exactly 0 or 1
  double uniform01() { return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Box-Muller on explicit uniforms
  double normal() {
    if (have_) {
      have_ = false;
      return cache_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cache_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Eigen::VectorXd unit_vector(int n) {
    for (;;) {
      Eigen::VectorXd v = normal_vector(n);
      const double norm = v.norm();
      if (norm > 1e-6) return v / norm;
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_ = false;
  double cache_ = 0;
};

// Stable 64-bit mix for deriving stream seeds from (seed, tag) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL + tag * 0xbf58476d1ce4e5b9ULL);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace ahmass
