#include "graff/coords.hpp"

#include <cmath>
#include <string>

#include "graff/errors.hpp"

namespace graff {

namespace detail {
double resolve_tolerance(double tol) noexcept { return tol > 0.0 ? tol : default_tolerance(); }
}  // namespace detail

namespace {

// Orthonormal basis of the column space of m together with its numerical rank.
struct ColumnSpace {
  Matrix basis;
  Eigen::Index rank;
};

ColumnSpace column_space(const Matrix& m, double tol) {
  if (m.cols() == 0) return {Matrix(m.rows(), 0), 0};
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  return {std::move(q), rank};
}

}  // namespace

void normalize_column_signs(Matrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol) {
        if (m(i, j) < 0.0) m.col(j) = -m.col(j);
        break;
      }
    }
  }
}

AffineFlat AffineFlat::from_orthogonal(Matrix basis, Vector offset, double tol) {
  tol = detail::resolve_tolerance(tol);
  const auto n = offset.size();
  const auto k = basis.cols();
  if (n < 1) throw DimensionError("ambient dimension must be positive");
  if (basis.rows() != n)
    throw DimensionError("basis has " + std::to_string(basis.rows()) + " rows, expected " +
                         std::to_string(n));
  if (k >= n)
    throw DimensionError("flat dimension " + std::to_string(k) + " must be below ambient dimension " +
                         std::to_string(n));
  if (!basis.allFinite() || !offset.allFinite()) throw InvalidArgument("non-finite coordinates");
  if (k > 0) {
    const double gram_err = (basis.transpose() * basis - Matrix::Identity(k, k)).norm();
    if (gram_err > tol * std::sqrt(static_cast<double>(k)) * 10.0)
      throw InvalidArgument("basis columns are not orthonormal (|A^T A - I| = " +
                            std::to_string(gram_err) + ")");
    const double cross = (basis.transpose() * offset).norm();
    if (cross > tol * std::max(1.0, offset.norm()) * 10.0)
      throw InvalidArgument("displacement is not orthogonal to the basis (|A^T b| = " +
                            std::to_string(cross) + ")");
  }
  return AffineFlat(std::move(basis), std::move(offset));
}

AffineFlat make_flat(const Matrix& basis_raw, const Vector& offset_raw, double tol) {
  tol = detail::resolve_tolerance(tol);
  const auto n = offset_raw.size();
  const auto k = basis_raw.cols();
  if (n < 1) throw DimensionError("ambient dimension must be positive");
  if (basis_raw.rows() != n) throw DimensionError("basis and displacement disagree on the ambient dimension");
  if (k >= n)
    throw DimensionError("flat dimension " + std::to_string(k) + " must be below ambient dimension " +
                         std::to_string(n));
  if (!basis_raw.allFinite() || !offset_raw.allFinite()) throw InvalidArgument("non-finite coordinates");

  auto [basis, rank] = column_space(basis_raw, tol);
  if (rank < k)
    throw RankDeficient("basis has numerical rank " + std::to_string(rank) + " < " + std::to_string(k));
  normalize_column_signs(basis);

  Vector offset = offset_raw;
  if (k > 0) {
    // Two passes of projection keep A^T b0 at rounding level.
    offset -= basis * (basis.transpose() * offset);
    offset -= basis * (basis.transpose() * offset);
  }
  return AffineFlat::from_orthogonal(std::move(basis), std::move(offset), tol);
}

Matrix stiefel_coords(const AffineFlat& flat) {
  const auto n = flat.ambient_dim();
  const auto k = flat.dim();
  const double scale = 1.0 / std::sqrt(1.0 + flat.offset().squaredNorm());
  Matrix y = Matrix::Zero(n + 1, k + 1);
  y.topLeftCorner(n, k) = flat.basis();
  y.col(k).head(n) = flat.offset() * scale;
  y(n, k) = scale;
  return y;
}

Matrix projection_coords(const AffineFlat& flat) {
  const auto n = flat.ambient_dim();
  const Vector& b = flat.offset();
  const double denom = 1.0 + b.squaredNorm();
  Matrix p(n + 1, n + 1);
  p.topLeftCorner(n, n) = flat.basis() * flat.basis().transpose() + b * b.transpose() / denom;
  p.col(n).head(n) = b / denom;
  p.row(n).head(n) = b.transpose() / denom;
  p(n, n) = 1.0 / denom;
  return p;
}

ProjectionAffinePair projection_affine_coords(const AffineFlat& flat) {
  return {flat.basis() * flat.basis().transpose(), flat.offset()};
}

Matrix embed(const AffineFlat& flat) { return stiefel_coords(flat); }

AffineFlat unembed(const Matrix& frame, double tol) {
  tol = detail::resolve_tolerance(tol);
  if (frame.rows() < 2 || frame.cols() < 1 || frame.cols() > frame.rows())
    throw DimensionError("frame must be (n+1) x (k+1) with 1 <= k+1 <= n+1");
  if (!frame.allFinite()) throw InvalidArgument("non-finite frame entries");
  const auto n = frame.rows() - 1;
  const auto p = frame.cols();

  auto [q, rank] = column_space(frame, tol);
  if (rank < p) throw RankDeficient("frame has numerical rank " + std::to_string(rank) + " < " + std::to_string(p));

  Vector last = q.row(n).transpose();
  const double r = last.norm();
  if (r < kNotAFlatThreshold)
    throw NotAFlat("plane lies in R^n x {0} (last-row norm " + std::to_string(r) + ")");

  // Householder rotation of the frame sending its last row to (0, ..., 0, r).
  // The reflector is built on the side without cancellation and the final
  // column sign is corrected afterwards.
  Vector u = last;
  const double sign = last(p - 1) >= 0.0 ? 1.0 : -1.0;
  u(p - 1) += sign * r;
  const double unorm2 = u.squaredNorm();
  Matrix rot = Matrix::Identity(p, p) - (2.0 / unorm2) * u * u.transpose();
  rot.col(p - 1) *= -sign;
  Matrix rotated = q * rot;

  const double corner = rotated(n, p - 1);
  Matrix basis = rotated.topLeftCorner(n, p - 1);
  Vector offset = rotated.col(p - 1).head(n) / corner;
  normalize_column_signs(basis);
  // Rotation leaves A^T b0 at rounding level; clean it relative to |b0|.
  if (p > 1) offset -= basis * (basis.transpose() * offset);
  return AffineFlat::from_orthogonal(std::move(basis), std::move(offset), tol);
}

AffineFlat flat_from_projection(const Matrix& projection) {
  if (projection.rows() != projection.cols() || projection.rows() < 2)
    throw DimensionError("projection coordinates must be square of size n+1 >= 2");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (projection + projection.transpose()));
  if (eig.info() != Eigen::Success) throw InternalError("eigendecomposition failed");
  const Vector& vals = eig.eigenvalues();
  Eigen::Index first = 0;
  while (first < vals.size() && vals(first) <= 0.5) ++first;
  const Eigen::Index count = vals.size() - first;
  if (count == 0) throw RankDeficient("projection has rank zero");
  return unembed(eig.eigenvectors().rightCols(count));
}

bool equal_flats(const AffineFlat& lhs, const AffineFlat& rhs, double tol) {
  if (lhs.ambient_dim() != rhs.ambient_dim())
    throw DimensionError("flats live in R^" + std::to_string(lhs.ambient_dim()) + " and R^" +
                         std::to_string(rhs.ambient_dim()));
  return (projection_coords(lhs) - projection_coords(rhs)).norm() <= tol;
}

AffineFlat pad_ambient(const AffineFlat& flat, int m) {
  const int n = flat.ambient_dim();
  if (m < n) throw DimensionError("cannot pad R^" + std::to_string(n) + " into R^" + std::to_string(m));
  Matrix basis = Matrix::Zero(m, flat.dim());
  basis.topRows(n) = flat.basis();
  Vector offset = Vector::Zero(m);
  offset.head(n) = flat.offset();
  return AffineFlat::from_orthogonal(std::move(basis), std::move(offset));
}

}  // namespace graff
