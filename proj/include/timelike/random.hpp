#pragma once

// Portable seeded generator. std::mt19937_64 produces the same bit stream on
// every conforming implementation; the distributions below are written out
// so that derived doubles are identical across standard libraries as well.

#include <cmath>
#include <cstdint>
#include <random>

#include "timelike/chart.hpp"

namespace timelike {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * n); }

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  Vector normal_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vector unit_vector(int n) {
    Vector v = normal_vector(n);
    double r = v.norm();
    while (!(r > 1e-12)) {
      v = normal_vector(n);
      r = v.norm();
    }
    return v / r;
  }

  /// Random orthogonal matrix (QR of a Gaussian matrix with sign fix).
  Matrix orthogonal(int n) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace timelike
