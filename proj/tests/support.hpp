#pragma once

// Helpers shared by the unit tests: random inputs and small independent
// reference computations that do not go through the library's own code paths.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "graff/coords.hpp"

namespace graff::testing {

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Matrix gaussian(Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) m(i, j) = normal();
    return m;
  }
  Vector gaussian(Eigen::Index r) { return gaussian(r, 1).col(0); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Haar-ish random orthogonal matrix (QR of a Gaussian with sign fix).
inline Matrix random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(rng.gaussian(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

inline AffineFlat random_flat(int k, int n, Rng& rng, double offset_scale = 1.0) {
  return make_flat(rng.gaussian(n, k), offset_scale * rng.gaussian(n));
}

// Rigid motion x -> R x + v applied to a flat.
inline AffineFlat move_flat(const AffineFlat& f, const Matrix& r, const Vector& v) {
  return make_flat(r * f.basis(), r * f.offset() + v);
}

// Stiefel coordinates written out by hand.
inline Matrix oracle_stiefel(const Matrix& a, const Vector& b0) {
  const auto n = a.rows();
  const auto k = a.cols();
  const double s = std::sqrt(1.0 + b0.squaredNorm());
  Matrix y = Matrix::Zero(n + 1, k + 1);
  y.topLeftCorner(n, k) = a;
  y.col(k).head(n) = b0 / s;
  y(n, k) = 1.0 / s;
  return y;
}

// Principal angles from the eigenvalues of M M^T, M = Y1^T Y2 (ascending
// angles, min(k, l) + 1 of them). Loses accuracy below ~1e-8 radians.
inline Vector oracle_angles(const AffineFlat& f, const AffineFlat& g) {
  const Matrix y1 = oracle_stiefel(f.basis(), f.offset());
  const Matrix y2 = oracle_stiefel(g.basis(), g.offset());
  Matrix m = y1.transpose() * y2;
  if (m.rows() > m.cols()) m.transposeInPlace();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m * m.transpose());
  Vector ev = es.eigenvalues();  // ascending
  const auto p = ev.size();
  Vector thetas(p);
  for (Eigen::Index i = 0; i < p; ++i) thetas(i) = std::acos(std::clamp(std::sqrt(std::max(0.0, ev(p - 1 - i))), 0.0, 1.0));
  return thetas;
}

inline Matrix oracle_projection(const AffineFlat& f) {
  const Matrix y = oracle_stiefel(f.basis(), f.offset());
  return y * y.transpose();
}

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// 1% critical value of the two-sample KS statistic (asymptotic).
inline double ks_critical_1pct(std::size_t na, std::size_t nb) {
  return 1.628 * std::sqrt(static_cast<double>(na + nb) / (static_cast<double>(na) * nb));
}

struct MeanWithError {
  double mean;
  double std_error;
};

// Mean with a batch-means standard error, robust to autocorrelation.
inline MeanWithError batch_means(const std::vector<double>& xs, int batches = 50) {
  const std::size_t per = xs.size() / batches;
  double total = 0.0;
  for (double x : xs) total += x;
  const double mean = total / xs.size();
  double ss = 0.0;
  for (int b = 0; b < batches; ++b) {
    double m = 0.0;
    for (std::size_t i = 0; i < per; ++i) m += xs[b * per + i];
    m /= per;
    ss += (m - mean) * (m - mean);
  }
  return {mean, std::sqrt(ss / (batches - 1) / batches)};
}

}  // namespace graff::testing
