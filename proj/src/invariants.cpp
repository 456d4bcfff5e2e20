#include "graff/invariants.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "graff/errors.hpp"

namespace graff {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

std::string triple(int k, int l, int n) {
  return "(k, l, n) = (" + std::to_string(k) + ", " + std::to_string(l) + ", " + std::to_string(n) + ")";
}

double log_unit_ball_volume(int m) {
  return 0.5 * m * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * m);
}

// sum_{j=first}^{last} log(omega_j); zero for an empty range.
double log_ball_product(int first, int last) {
  double sum = 0.0;
  for (int j = first; j <= last; ++j) sum += log_unit_ball_volume(j);
  return sum;
}

double log_factorial(int m) { return std::lgamma(m + 1.0); }

GroupDescriptor bott(int r) {
  switch (r % 8) {
    case 0:
    case 4: return GroupDescriptor::Z;
    case 1:
    case 2: return GroupDescriptor::Z2;
    default: return GroupDescriptor::trivial;
  }
}

}  // namespace

std::int64_t dim_graff(int k, int n) {
  require(0 <= k && k < n, "dim_graff needs 0 <= k < n");
  return static_cast<std::int64_t>(n - k) * (k + 1);
}

std::int64_t dim_gr(int k, int n) {
  require(0 <= k && k <= n, "dim_gr needs 0 <= k <= n");
  return static_cast<std::int64_t>(k) * (n - k);
}

StiefelDims dim_stiefel_affine(int k, int n) {
  require(0 < k && k <= n, "dim_stiefel_affine needs 0 < k <= n");
  const std::int64_t kk = k;
  const std::int64_t nn = n;
  return {kk * (2 * nn - kk + 1) / 2, nn * (kk + 1)};
}

std::int64_t dim_schubert_affine(std::span<const int> flag_dims) {
  if (flag_dims.empty()) throw InvalidFlag("affine flag must have at least one member");
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < flag_dims.size(); ++j) {
    const int d = flag_dims[j];
    if (d < static_cast<int>(j) + 1)
      throw InvalidFlag("flag member " + std::to_string(j + 1) + " has dimension " + std::to_string(d) + " < " +
                        std::to_string(j + 1));
    if (j > 0 && d <= flag_dims[j - 1]) throw InvalidFlag("flag dimensions must be strictly increasing");
    sum += d;
  }
  const std::int64_t k = static_cast<std::int64_t>(flag_dims.size());
  return sum - k * (k + 1) / 2 + (flag_dims.front() - 1);
}

std::int64_t dim_psi_plus(int k, int l, int n) {
  require(0 <= k && k <= l && l <= n, "dim_psi_plus needs 0 <= k <= l <= n, got " + triple(k, l, n));
  return static_cast<std::int64_t>(n - l) * (l - k);
}

std::int64_t dim_psi_minus(int k, int l, int n) {
  require(0 <= k && k <= l && l <= n, "dim_psi_minus needs 0 <= k <= l <= n, got " + triple(k, l, n));
  return static_cast<std::int64_t>(k + 1) * (l - k);
}

double unit_ball_volume(int m) {
  if (m < 0) throw DimensionError("unit ball dimension must be nonnegative");
  if (m > 300) return std::exp(log_unit_ball_volume(m));
  // omega_m = omega_{m-2} * 2 pi / m, starting from omega_0 = 1, omega_1 = 2.
  double w = m % 2 == 0 ? 1.0 : 2.0;
  for (int j = m % 2 == 0 ? 2 : 3; j <= m; j += 2) w *= 2.0 * std::numbers::pi / j;
  return w;
}

ScaledValue volume_gr(int k, int n) {
  require(0 <= k && k <= n, "volume_gr needs 0 <= k <= n");
  const double log_binom = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
  const double log_vol = log_binom + log_ball_product(1, n) - log_ball_product(1, k) - log_ball_product(1, n - k);
  // Direct product when it stays in range; exp(log) would cost a few ulps.
  const int j_max = std::min(k, n - k);
  double direct = 1.0;
  for (int j = 1; j <= j_max; ++j) {
    direct *= static_cast<double>(n - j_max + j) / j;
    direct *= unit_ball_volume(n - j_max + j) / unit_ball_volume(j);
  }
  if (std::isfinite(direct) && direct > 0.0 && std::abs(log_vol) < 600.0) return {direct, log_vol};
  return {std::exp(log_vol), log_vol};
}

ScaledValue volume_graff(int k, int n) {
  require(0 <= k && k < n, "volume_graff needs 0 <= k < n");
  return volume_gr(k + 1, n + 1);
}

double relative_volume(int k, int l, int n) {
  require(0 <= k && k <= l && l <= n, "relative_volume needs 0 <= k <= l <= n, got " + triple(k, l, n));
  require(k + l >= n, "relative_volume needs k + l >= n, got " + triple(k, l, n));
  const double log_num = log_factorial(l + 1) + log_factorial(n - k) + log_ball_product(l - k + 1, l + 1);
  const double log_den = log_factorial(n + 1) + log_factorial(l - k) + log_ball_product(n - k + 1, n + 1);
  return std::exp(log_num - log_den);
}

std::int64_t betti(int k, int i) {
  if (k < 1) throw DimensionError("betti needs k >= 1");
  if (i < 0) throw DimensionError("betti needs i >= 0");
  // Partitions of i into at most k parts = partitions into parts of size <= k.
  std::vector<std::int64_t> count(static_cast<std::size_t>(i) + 1, 0);
  count[0] = 1;
  for (int part = 1; part <= std::min(k, i); ++part) {
    for (int total = part; total <= i; ++total) {
      if (__builtin_add_overflow(count[total], count[total - part], &count[total]))
        throw InvalidArgument("partition count of " + std::to_string(i) + " overflows 64 bits");
    }
  }
  return count[static_cast<std::size_t>(i)];
}

std::string_view to_string(GroupDescriptor g) noexcept {
  switch (g) {
    case GroupDescriptor::Z: return "Z";
    case GroupDescriptor::Z2: return "Z2";
    case GroupDescriptor::trivial: return "trivial";
    case GroupDescriptor::unknown: return "unknown";
  }
  return "unknown";
}

GroupDescriptor homotopy_group(int k, std::optional<int> n, int r) {
  if (k < 0 || r < 1) return GroupDescriptor::unknown;
  if (!n) return r == 1 ? GroupDescriptor::Z2 : bott(r);

  const int nn = *n;
  if (k >= nn) return GroupDescriptor::unknown;
  if (r == 1) {
    if (k == 1 && nn == 2) return GroupDescriptor::Z;
    if (nn >= k + 2 && 0 < k && 2 * k < nn) return GroupDescriptor::Z2;
    return GroupDescriptor::unknown;
  }
  if (2 * k < nn && r < nn - 2 * k) return bott(r);
  return GroupDescriptor::unknown;
}

}  // namespace graff
