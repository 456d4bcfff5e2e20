#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "graff/coords.hpp"

namespace graff {

// Affine principal angles between two flats, from the SVD of Y_F^T Y_G.
struct PrincipalDecomposition {
  Vector thetas;  // nondecreasing, in [0, pi/2], length min(k, l) + 1
  Vector sigmas;  // cos(thetas), nonincreasing
  Matrix u;       // (k+1) x (k+1)
  Matrix v;       // (l+1) x (l+1)
  Matrix p_vecs;  // Y_F U
  Matrix q_vecs;  // Y_G V
};

// Throws DimensionError if the ambient dimensions differ; pad first.
PrincipalDecomposition principal_decomposition(const AffineFlat& f, const AffineFlat& g);

enum class DistanceKind {
  grassmann,
  asimov,
  binet_cauchy,
  chordal,
  fubini_study,
  martin,
  procrustes,
  projection,
  spectral,
};

inline constexpr std::array<DistanceKind, 9> kAllDistanceKinds = {
    DistanceKind::grassmann,  DistanceKind::asimov,     DistanceKind::binet_cauchy,
    DistanceKind::chordal,    DistanceKind::fubini_study, DistanceKind::martin,
    DistanceKind::procrustes, DistanceKind::projection, DistanceKind::spectral,
};

std::string_view to_string(DistanceKind kind) noexcept;
std::optional<DistanceKind> parse_distance_kind(std::string_view name) noexcept;

// Evaluates one of the nine distance formulas on a list of affine principal
// angles sorted ascending. The "largest angle" kinds use the last entry.
// Martin returns +inf when some angle equals pi/2.
double distance_from_angles(const Vector& thetas, DistanceKind kind);

// Distance between two flats of equal dimension. Throws DimensionError when
// the dimensions differ (use delta_distance) or the ambient spaces differ.
double distance(const AffineFlat& f, const AffineFlat& g, DistanceKind kind = DistanceKind::grassmann);

// Distance between flats of possibly different dimensions: the distance from
// the smaller flat to the set of flats of its dimension contained in the
// larger one. Symmetric, and identical to distance() when k == l.
double delta_distance(const AffineFlat& f, const AffineFlat& g, DistanceKind kind = DistanceKind::grassmann);

// Metric on flats of all dimensions (grassmann, chordal, procrustes only).
// Throws UnsupportedKind for the other kinds.
double infinite_metric(const AffineFlat& f, const AffineFlat& g, DistanceKind kind = DistanceKind::grassmann);

// Data of the distance-minimizing geodesic
//   t -> unembed(Y_start U cos(t Theta) + Q sin(t Theta))
// between two k-flats.
struct GeodesicCurve {
  Matrix y_start;  // (n+1) x (k+1)
  Matrix u;        // (k+1) x (k+1)
  Vector thetas;   // diagonal of Theta, ascending
  Matrix q;        // (n+1) x (k+1), orthonormal and orthogonal to y_start
  int n = 0;
  int k = 0;

  // Frobenius norm of the initial velocity, equal to the Grassmann distance.
  double speed() const { return thetas.norm(); }
};

// Throws SingularPair when Y_F^T Y_G is singular (smallest cosine below
// 1e-10) and DimensionError when the flats differ in dimension or ambient.
GeodesicCurve geodesic(const AffineFlat& f, const AffineFlat& g);

// Orthonormal frame of the (k+1)-plane reached at time t, before unembedding.
Matrix geodesic_frame(const GeodesicCurve& curve, double t);

// Throws NotAFlat at the (at most one) parameter where the curve leaves the
// image of the embedding.
AffineFlat evaluate_geodesic(const GeodesicCurve& curve, double t);

}  // namespace graff
