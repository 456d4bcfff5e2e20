#pragma once

#include "graff/coords.hpp"

namespace graff {

// Points in R^d, one per row.
class PointCloud {
 public:
  explicit PointCloud(Matrix points);
  const Matrix& points() const noexcept { return points_; }
  int size() const noexcept { return static_cast<int>(points_.rows()); }
  int dim() const noexcept { return static_cast<int>(points_.cols()); }

 private:
  Matrix points_;
};

// Points with binary labels in {-1, +1}.
class LabeledCloud {
 public:
  LabeledCloud(Matrix points, Vector labels);
  const Matrix& points() const noexcept { return points_; }
  const Vector& labels() const noexcept { return labels_; }
  int size() const noexcept { return static_cast<int>(points_.rows()); }
  int dim() const noexcept { return static_cast<int>(points_.cols()); }

 private:
  Matrix points_;
  Vector labels_;
};

// Euclidean distance from x to the flat, |(I - A A^T)(x - b0)|.
double point_to_flat_distance(const Vector& x, const AffineFlat& flat);

// Sum of squared point-to-flat distances over the cloud.
double squared_residual(const PointCloud& cloud, const AffineFlat& flat);

struct FlatFit {
  AffineFlat flat;
  // Set when the k-th and (k+1)-th singular values of the centered data tie
  // within tolerance; the fit is then one of several minimizers, selected by
  // singular-vector index order.
  bool degenerate_spectrum = false;
};

// Least-squares k-flat through the cloud: the sample mean plus the top-k
// right singular directions of the centered data. Throws DimensionError
// unless 0 <= k < d and the cloud has at least k + 1 points.
FlatFit fit_flat(const PointCloud& cloud, int k);

struct RegressionFit {
  AffineFlat flat;    // p-flat in R^{p+1}: the graph of x -> beta^T x + intercept
  Vector beta;        // p slopes
  double intercept;   // beta_{p+1}
};

// Ordinary least squares on [X, 1]. Throws RankDeficient when the augmented
// design does not have full column rank.
RegressionFit linear_regression(const Matrix& design, const Vector& response);

// Total-least-squares line; same minimizer as fit_flat(cloud, 1).
AffineFlat eiv_line(const PointCloud& cloud);

struct SvmFit {
  AffineFlat flat;  // hyperplane {x : w^T x = beta} as a (d-1)-flat
  Vector w;
  double beta;
  int iterations = 0;
};

struct SvmOptions {
  double kkt_tolerance = 1e-8;
  int max_iterations = 100000;
};

// Hard-margin linear SVM: minimizes |w| subject to y_i (w^T x_i - beta) >= 1,
// solved on the dual by SMO pairwise updates. Throws NotSeparable when the
// dual does not converge, diverges, or the returned margins cannot be
// certified.
SvmFit svm_hyperplane(const LabeledCloud& data, const SvmOptions& options = {});

}  // namespace graff
