#include "graff/fitting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "graff/errors.hpp"

namespace graff {

namespace {

constexpr double kSvmTau = 1e-12;
constexpr double kSvmDivergence = 1e12;
constexpr double kMarginSlack = 1e-6;

}  // namespace

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) throw DimensionError("point cloud needs at least one point");
  if (!points_.allFinite()) throw InvalidArgument("point cloud has non-finite entries");
}

LabeledCloud::LabeledCloud(Matrix points, Vector labels) : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.rows() < 1 || points_.cols() < 1) throw DimensionError("labeled cloud needs at least one point");
  if (labels_.size() != points_.rows()) throw DimensionError("one label per point required");
  if (!points_.allFinite()) throw InvalidArgument("labeled cloud has non-finite entries");
  bool has_pos = false;
  bool has_neg = false;
  for (double y : labels_) {
    if (y == 1.0) {
      has_pos = true;
    } else if (y == -1.0) {
      has_neg = true;
    } else {
      throw InvalidArgument("labels must be -1 or +1");
    }
  }
  if (!has_pos || !has_neg) throw InvalidArgument("both labels must be present");
}

double point_to_flat_distance(const Vector& x, const AffineFlat& flat) {
  if (x.size() != flat.ambient_dim()) throw DimensionError("point and flat live in different dimensions");
  Vector r = x - flat.offset();
  r -= flat.basis() * (flat.basis().transpose() * r);
  return r.norm();
}

double squared_residual(const PointCloud& cloud, const AffineFlat& flat) {
  double total = 0.0;
  for (int i = 0; i < cloud.size(); ++i) {
    const double d = point_to_flat_distance(cloud.points().row(i).transpose(), flat);
    total += d * d;
  }
  return total;
}

FlatFit fit_flat(const PointCloud& cloud, int k) {
  const int d = cloud.dim();
  if (k < 0 || k >= d) throw DimensionError("fit_flat needs 0 <= k < d = " + std::to_string(d));
  if (cloud.size() < k + 1)
    throw DimensionError("fit_flat needs at least k + 1 = " + std::to_string(k + 1) + " points");

  const Vector mean = cloud.points().colwise().mean().transpose();
  if (k == 0) return {make_flat(Matrix(d, 0), mean), false};

  const Matrix centered = cloud.points().rowwise() - mean.transpose();
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double next = k < sv.size() ? sv(k) : 0.0;
  const bool degenerate = sv(0) == 0.0 || sv(k - 1) - next <= default_tolerance() * sv(0);

  // Top right singular vectors, padded with a completion when the cloud has
  // fewer than k + 1 distinct directions (possible only when degenerate).
  Matrix directions = svd.matrixV().leftCols(std::min<Eigen::Index>(k, svd.matrixV().cols()));
  if (directions.cols() < k) {
    Matrix full = Matrix::Identity(d, d);
    full.leftCols(directions.cols()) = directions;
    Eigen::HouseholderQR<Matrix> qr(full);
    directions = qr.householderQ() * Matrix::Identity(d, k);
  }
  return {make_flat(directions, mean), degenerate};
}

RegressionFit linear_regression(const Matrix& design, const Vector& response) {
  const auto rows = design.rows();
  const auto p = design.cols();
  if (response.size() != rows) throw DimensionError("response length must match the number of design rows");
  if (p < 1) throw DimensionError("design needs at least one column");
  if (!design.allFinite() || !response.allFinite()) throw InvalidArgument("non-finite regression data");

  Matrix augmented(rows, p + 1);
  augmented.leftCols(p) = design;
  augmented.col(p).setOnes();
  Eigen::ColPivHouseholderQR<Matrix> qr(augmented);
  qr.setThreshold(default_tolerance());
  if (qr.rank() < p + 1)
    throw RankDeficient("[X, 1] has rank " + std::to_string(qr.rank()) + " < " + std::to_string(p + 1));
  const Vector coef = qr.solve(response);

  Matrix basis(p + 1, p);
  basis.topRows(p) = Matrix::Identity(p, p);
  basis.row(p) = coef.head(p).transpose();
  Vector offset = Vector::Zero(p + 1);
  offset(p) = coef(p);
  return {make_flat(basis, offset), coef.head(p), coef(p)};
}

AffineFlat eiv_line(const PointCloud& cloud) { return fit_flat(cloud, 1).flat; }

SvmFit svm_hyperplane(const LabeledCloud& data, const SvmOptions& options) {
  const int m = data.size();
  const int d = data.dim();
  const Matrix& x = data.points();
  const Vector& y = data.labels();
  const Matrix kernel = x * x.transpose();

  // Dual: min 1/2 a^T Q a - 1^T a, a >= 0, y^T a = 0, with Q_ij = y_i y_j K_ij.
  // Working-set selection follows the maximal-violating-pair rule with
  // second-order choice of the partner; there is no upper bound on a.
  Vector alpha = Vector::Zero(m);
  Vector grad = Vector::Constant(m, -1.0);
  int iter = 0;
  for (;; ++iter) {
    if (iter >= options.max_iterations)
      throw NotSeparable("no KKT point within " + std::to_string(options.max_iterations) + " iterations");

    int i = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < m; ++t) {
      const bool up = y(t) > 0 || alpha(t) > 0.0;
      if (up && -y(t) * grad(t) >= gmax) {
        if (-y(t) * grad(t) > gmax || i < 0) i = t;
        gmax = -y(t) * grad(t);
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    int j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < m; ++t) {
      const bool low = y(t) < 0 || alpha(t) > 0.0;
      if (!low) continue;
      gmax2 = std::max(gmax2, y(t) * grad(t));
      if (i < 0) continue;
      const double diff = gmax + y(t) * grad(t);
      if (diff > 0.0) {
        double quad = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
        if (quad <= 0.0) quad = kSvmTau;
        const double obj = -diff * diff / quad;
        if (obj < best) {
          best = obj;
          j = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < options.kkt_tolerance) break;

    const double old_i = alpha(i);
    const double old_j = alpha(j);
    if (y(i) != y(j)) {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
      if (quad <= 0.0) quad = kSvmTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = alpha(i) - alpha(j);
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0.0) {
        if (alpha(j) < 0.0) {
          alpha(j) = 0.0;
          alpha(i) = diff;
        }
      } else if (alpha(i) < 0.0) {
        alpha(i) = 0.0;
        alpha(j) = -diff;
      }
    } else {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
      if (quad <= 0.0) quad = kSvmTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = alpha(i) + alpha(j);
      alpha(i) -= delta;
      alpha(j) += delta;
      if (alpha(j) < 0.0) {
        alpha(j) = 0.0;
        alpha(i) = sum;
      }
      if (alpha(i) < 0.0) {
        alpha(i) = 0.0;
        alpha(j) = sum;
      }
    }
    const double di = alpha(i) - old_i;
    const double dj = alpha(j) - old_j;
    for (int t = 0; t < m; ++t) grad(t) += y(t) * (y(i) * kernel(t, i) * di + y(j) * kernel(t, j) * dj);

    if (!(alpha.sum() < kSvmDivergence)) throw NotSeparable("dual objective diverges; classes overlap");
  }

  Vector w = x.transpose() * (alpha.array() * y.array()).matrix();
  double beta_sum = 0.0;
  int support = 0;
  for (int t = 0; t < m; ++t) {
    if (alpha(t) > 0.0) {
      beta_sum += x.row(t).dot(w) - y(t);
      ++support;
    }
  }
  if (support == 0 || !(w.norm() > 0.0)) throw NotSeparable("degenerate dual solution");
  const double beta = beta_sum / support;

  for (int t = 0; t < m; ++t) {
    if (y(t) * (x.row(t).dot(w) - beta) < 1.0 - kMarginSlack)
      throw NotSeparable("margin constraint " + std::to_string(t) + " violated at the dual optimum");
  }

  const double wnorm2 = w.squaredNorm();
  Matrix basis(d, d - 1);
  if (d > 1) {
    Eigen::HouseholderQR<Matrix> qr(w / std::sqrt(wnorm2));
    const Matrix full = qr.householderQ() * Matrix::Identity(d, d);
    basis = full.rightCols(d - 1);
  }
  return {make_flat(basis, (beta / wnorm2) * w), w, beta, iter};
}

}  // namespace graff
