#include "graff/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "graff/errors.hpp"

namespace graff {

namespace {

constexpr double kSigmaOvershoot = 1e-8;
constexpr double kSingularPairThreshold = 1e-10;
constexpr double kZeroAngleSine = 1e-12;

void require_same_ambient(const AffineFlat& f, const AffineFlat& g) {
  if (f.ambient_dim() != g.ambient_dim())
    throw DimensionError("flats live in R^" + std::to_string(f.ambient_dim()) + " and R^" +
                         std::to_string(g.ambient_dim()) + "; pad_ambient one of them first");
}

// Principal angles between span(y1) and span(y2) given the cosines from the
// SVD of y1^T y2. Small angles are recovered from sines, since arccos loses
// half the digits near 1.
Vector angles_from_cosines(const Matrix& y1, const Matrix& y2, const Vector& cosines) {
  const Eigen::Index m = cosines.size();
  Matrix residual = y1.cols() <= y2.cols() ? Matrix(y1 - y2 * (y2.transpose() * y1))
                                           : Matrix(y2 - y1 * (y1.transpose() * y2));
  Eigen::JacobiSVD<Matrix> svd(residual);
  const Vector sines_desc = svd.singularValues();

  Vector thetas(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines_desc(m - 1 - i), 0.0, 1.0);
    thetas(i) = std::atan2(s, c);
    if (i > 0) thetas(i) = std::max(thetas(i), thetas(i - 1));
  }
  return thetas;
}

void check_cosines(const Vector& sigmas) {
  if (sigmas.size() > 0 && sigmas(0) > 1.0 + kSigmaOvershoot)
    throw InternalError("singular value " + std::to_string(sigmas(0)) + " of Y_F^T Y_G exceeds 1");
}

Vector affine_angles(const AffineFlat& f, const AffineFlat& g) {
  require_same_ambient(f, g);
  const Matrix y1 = stiefel_coords(f);
  const Matrix y2 = stiefel_coords(g);
  Eigen::JacobiSVD<Matrix> svd(y1.transpose() * y2);
  check_cosines(svd.singularValues());
  return angles_from_cosines(y1, y2, svd.singularValues());
}

}  // namespace

std::string_view to_string(DistanceKind kind) noexcept {
  switch (kind) {
    case DistanceKind::grassmann: return "grassmann";
    case DistanceKind::asimov: return "asimov";
    case DistanceKind::binet_cauchy: return "binet_cauchy";
    case DistanceKind::chordal: return "chordal";
    case DistanceKind::fubini_study: return "fubini_study";
    case DistanceKind::martin: return "martin";
    case DistanceKind::procrustes: return "procrustes";
    case DistanceKind::projection: return "projection";
    case DistanceKind::spectral: return "spectral";
  }
  return "unknown";
}

std::optional<DistanceKind> parse_distance_kind(std::string_view name) noexcept {
  for (DistanceKind kind : kAllDistanceKinds) {
    if (to_string(kind) == name) return kind;
  }
  if (name == "binet-cauchy") return DistanceKind::binet_cauchy;
  if (name == "fubini-study") return DistanceKind::fubini_study;
  return std::nullopt;
}

PrincipalDecomposition principal_decomposition(const AffineFlat& f, const AffineFlat& g) {
  require_same_ambient(f, g);
  const Matrix y1 = stiefel_coords(f);
  const Matrix y2 = stiefel_coords(g);
  Eigen::JacobiSVD<Matrix> svd(y1.transpose() * y2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  check_cosines(svd.singularValues());

  PrincipalDecomposition out;
  out.sigmas = svd.singularValues().cwiseMax(0.0).cwiseMin(1.0);
  out.thetas = angles_from_cosines(y1, y2, svd.singularValues());
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.p_vecs = y1 * out.u;
  out.q_vecs = y2 * out.v;
  return out;
}

double distance_from_angles(const Vector& thetas, DistanceKind kind) {
  if (thetas.size() == 0) throw InvalidArgument("no principal angles");
  const double largest = thetas(thetas.size() - 1);
  switch (kind) {
    case DistanceKind::grassmann:
      return thetas.norm();
    case DistanceKind::asimov:
      return largest;
    case DistanceKind::binet_cauchy: {
      double prod = 1.0;
      for (double t : thetas) prod *= std::cos(t) * std::cos(t);
      return std::sqrt(std::max(0.0, 1.0 - prod));
    }
    case DistanceKind::chordal:
      return thetas.array().sin().matrix().norm();
    case DistanceKind::fubini_study: {
      double prod = 1.0;
      for (double t : thetas) prod *= std::cos(t);
      return std::acos(std::clamp(prod, 0.0, 1.0));
    }
    case DistanceKind::martin: {
      double sum = 0.0;
      for (double t : thetas) {
        if (t >= std::numbers::pi / 2) return std::numeric_limits<double>::infinity();
        sum -= 2.0 * std::log(std::cos(t));
      }
      return std::sqrt(std::max(0.0, sum));
    }
    case DistanceKind::procrustes:
      return 2.0 * (thetas / 2.0).array().sin().matrix().norm();
    case DistanceKind::projection:
      return std::sin(largest);
    case DistanceKind::spectral:
      return 2.0 * std::sin(largest / 2.0);
  }
  throw UnsupportedKind("unknown distance kind");
}

double distance(const AffineFlat& f, const AffineFlat& g, DistanceKind kind) {
  if (f.dim() != g.dim())
    throw DimensionError("flats have dimensions " + std::to_string(f.dim()) + " and " + std::to_string(g.dim()) +
                         "; use delta_distance for flats of different dimensions");
  return distance_from_angles(affine_angles(f, g), kind);
}

double delta_distance(const AffineFlat& f, const AffineFlat& g, DistanceKind kind) {
  return distance_from_angles(affine_angles(f, g), kind);
}

double infinite_metric(const AffineFlat& f, const AffineFlat& g, DistanceKind kind) {
  const double gap = std::abs(f.dim() - g.dim());
  switch (kind) {
    case DistanceKind::grassmann: {
      const Vector thetas = affine_angles(f, g);
      return std::sqrt(gap * std::numbers::pi * std::numbers::pi / 4.0 + thetas.squaredNorm());
    }
    case DistanceKind::chordal: {
      const Vector thetas = affine_angles(f, g);
      return std::sqrt(gap + thetas.array().sin().square().sum());
    }
    case DistanceKind::procrustes: {
      const Vector thetas = affine_angles(f, g);
      return std::sqrt(gap + 2.0 * (thetas / 2.0).array().sin().square().sum());
    }
    default:
      throw UnsupportedKind(std::string(to_string(kind)) +
                            " has no metric across dimensions; use grassmann, chordal or procrustes");
  }
}

GeodesicCurve geodesic(const AffineFlat& f, const AffineFlat& g) {
  require_same_ambient(f, g);
  if (f.dim() != g.dim()) throw DimensionError("geodesics connect flats of equal dimension only");
  const int n = f.ambient_dim();
  const int p = f.dim() + 1;
  const Matrix y1 = stiefel_coords(f);
  const Matrix y2 = stiefel_coords(g);

  Eigen::JacobiSVD<Matrix> svd(y1.transpose() * y2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigmas = svd.singularValues();
  check_cosines(sigmas);
  if (sigmas(p - 1) < kSingularPairThreshold)
    throw SingularPair("Y_F^T Y_G is singular (smallest singular value " + std::to_string(sigmas(p - 1)) + ")");

  GeodesicCurve curve;
  curve.y_start = y1;
  curve.u = svd.matrixU();
  curve.thetas = angles_from_cosines(y1, y2, sigmas);
  curve.n = n;
  curve.k = p - 1;

  // (I - Y1 Y1^T) Y2 V has orthogonal columns of norm sin(theta_i).
  const Matrix w = y2 * svd.matrixV() - y1 * (curve.u * sigmas.asDiagonal());
  Matrix q = Matrix::Zero(n + 1, p);
  auto orthogonalize = [&](Vector v, int filled_upto) {
    for (int pass = 0; pass < 2; ++pass) {
      v -= y1 * (y1.transpose() * v);
      for (int j = 0; j < p; ++j) {
        if (j != filled_upto && q.col(j).squaredNorm() > 0.0) v -= q.col(j) * q.col(j).dot(v);
      }
    }
    return v;
  };

  std::vector<int> zero_angle;
  for (int i = 0; i < p; ++i) {
    const double norm = w.col(i).norm();
    if (norm > kZeroAngleSine) {
      q.col(i) = w.col(i) / norm;
    } else {
      zero_angle.push_back(i);
    }
  }
  for (int i = 0; i < p; ++i) {
    if (q.col(i).squaredNorm() > 0.0) {
      Vector v = orthogonalize(q.col(i), i);
      q.col(i) = v / v.norm();
    }
  }
  // Zero angles: complete with standard basis directions in ascending order
  // where the complement of Y1 still has room; the column stays zero
  // otherwise, which leaves the curve unchanged since sin(t * 0) = 0.
  int candidate = 0;
  for (int i : zero_angle) {
    for (; candidate <= n; ++candidate) {
      Vector v = orthogonalize(Vector::Unit(n + 1, candidate), i);
      if (v.norm() > 1e-3) {
        q.col(i) = v / v.norm();
        ++candidate;
        break;
      }
    }
  }
  curve.q = std::move(q);
  return curve;
}

Matrix geodesic_frame(const GeodesicCurve& curve, double t) {
  const Vector scaled = t * curve.thetas;
  return curve.y_start * curve.u * scaled.array().cos().matrix().asDiagonal() +
         curve.q * scaled.array().sin().matrix().asDiagonal();
}

AffineFlat evaluate_geodesic(const GeodesicCurve& curve, double t) { return unembed(geodesic_frame(curve, t)); }

}  // namespace graff
