#pragma once

#include <Eigen/Dense>

#include "graff/tolerance.hpp"

namespace graff {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A k-flat span(A) + b0 in R^n held in orthogonal affine coordinates:
// A is n x k with orthonormal columns and b0 is orthogonal to span(A).
// Instances are immutable and always satisfy those invariants; the only
// ways to obtain one are make_flat() and AffineFlat::from_orthogonal().
class AffineFlat {
 public:
  // Wraps coordinates that are already orthogonal. Throws DimensionError on
  // shape problems and InvalidArgument when A^T A != I or A^T b0 != 0 beyond
  // tol (default: the global tolerance, scaled by max(1, |b0|)).
  static AffineFlat from_orthogonal(Matrix basis, Vector offset, double tol = -1.0);

  int ambient_dim() const noexcept { return static_cast<int>(offset_.size()); }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const noexcept { return basis_; }
  const Vector& offset() const noexcept { return offset_; }

 private:
  AffineFlat(Matrix basis, Vector offset) : basis_(std::move(basis)), offset_(std::move(offset)) {}

  Matrix basis_;
  Vector offset_;
};

// Canonicalizes affine coordinates [A_raw, b_raw] of the flat span(A_raw) + b_raw.
// The basis is orthonormalized (first significant entry of each column made
// positive) and the displacement projected onto the orthogonal complement.
// Throws RankDeficient when A_raw does not have full column rank and
// DimensionError when k >= n or the shapes disagree.
AffineFlat make_flat(const Matrix& basis_raw, const Vector& offset_raw, double tol = -1.0);

// (n+1) x (k+1) orthonormal matrix [[A, b0/s], [0, 1/s]] with s = sqrt(1 + |b0|^2).
Matrix stiefel_coords(const AffineFlat& flat);

// The (n+1) x (n+1) orthogonal projection onto the embedded (k+1)-plane.
// Unique for each flat, unlike the Stiefel coordinates.
Matrix projection_coords(const AffineFlat& flat);

// [P, b] with P = A A^T the n x n projection onto the linear part and b = b0.
struct ProjectionAffinePair {
  Matrix projection;
  Vector offset;
};
ProjectionAffinePair projection_affine_coords(const AffineFlat& flat);

// The embedding of k-flats of R^n into (k+1)-planes of R^{n+1}, sending
// A + b to span(A, b + e_{n+1}). Returns an orthonormal frame of the image,
// which is the Stiefel coordinates.
Matrix embed(const AffineFlat& flat);

// Inverse of embed on its image: recovers the flat whose embedding spans the
// same (k+1)-plane as frame. Throws RankDeficient when frame is rank
// deficient and NotAFlat when the plane lies in R^n x {0}.
AffineFlat unembed(const Matrix& frame, double tol = -1.0);

// Recovers a flat from a (possibly noisy) projection matrix on R^{n+1} by
// taking the eigenvectors with eigenvalue above 1/2.
AffineFlat flat_from_projection(const Matrix& projection);

// True iff the projection coordinates of both flats agree within tol in the
// Frobenius norm. Throws DimensionError on ambient mismatch.
bool equal_flats(const AffineFlat& lhs, const AffineFlat& rhs, double tol);

// Includes R^n into R^m (m >= n) by zero-padding basis and displacement.
AffineFlat pad_ambient(const AffineFlat& flat, int m);

// Flips column signs so that the first entry of each column with magnitude
// above tol is positive.
void normalize_column_signs(Matrix& m, double tol = 1e-12);

namespace detail {
double resolve_tolerance(double tol) noexcept;
}

}  // namespace graff
