#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace graff {

// Manifold dimension (n - k)(k + 1) of the space of k-flats in R^n.
std::int64_t dim_graff(int k, int n);

// Dimension k(n - k) of the Grassmannian of linear k-planes in R^n.
std::int64_t dim_gr(int k, int n);

struct StiefelDims {
  std::int64_t compact;     // k(2n - k + 1) / 2
  std::int64_t noncompact;  // n(k + 1)
};
StiefelDims dim_stiefel_affine(int k, int n);

// Dimension of the affine Schubert variety of an affine flag whose members
// have dimensions d_1 < ... < d_k: sum d_j - k(k+1)/2 + (d_1 - 1).
// Throws InvalidFlag unless the list is nonempty, strictly increasing and
// d_j >= j.
std::int64_t dim_schubert_affine(std::span<const int> flag_dims);

// l-flats containing a fixed k-flat: (n - l)(l - k).
std::int64_t dim_psi_plus(int k, int l, int n);
// k-flats contained in a fixed l-flat: (k + 1)(l - k).
std::int64_t dim_psi_minus(int k, int l, int n);

// A real number carried together with its natural logarithm, so that
// quantities far outside double range can still be compared.
struct ScaledValue {
  double value;
  double log_value;
};

// Volume of the unit ball in R^m, pi^{m/2} / Gamma(1 + m/2).
double unit_ball_volume(int m);

// Riemannian volume of Gr(k, n), accumulated in log space.
ScaledValue volume_gr(int k, int n);
// Volume of the space of k-flats in R^n, equal to volume_gr(k + 1, n + 1).
ScaledValue volume_graff(int k, int n);

// Common relative volume of the l-flats containing a k-flat and of the
// k-flats contained in an l-flat. Requires k <= l <= n and k + l >= n.
double relative_volume(int k, int l, int n);

// Z_2 Betti number r_i: the number of partitions of i into at most k parts.
std::int64_t betti(int k, int i);

enum class GroupDescriptor { Z, Z2, trivial, unknown };
std::string_view to_string(GroupDescriptor g) noexcept;

// r-th homotopy group of the space of k-flats in R^n. Pass std::nullopt for
// n to mean the infinite affine Grassmannian. Returns unknown outside the
// parameter ranges where the groups are classified.
GroupDescriptor homotopy_group(int k, std::optional<int> n, int r);

}  // namespace graff
