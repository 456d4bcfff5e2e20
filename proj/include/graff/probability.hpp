#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "graff/coords.hpp"

namespace graff {

// Seedable pseudo-random stream. Every sampler takes one explicitly; equal
// seeds reproduce equal sample sequences.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);
  Vector normal_vector(Eigen::Index size);

  // Independent child stream, e.g. one per worker shard.
  static RandomStream derived(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Uniform k-flat in R^n: span of an (n+1) x (k+1) Gaussian matrix pushed
// through unembed.
AffineFlat sample_uniform(int k, int n, RandomStream& rng);

// Uniform k-plane of R^n as an n x k orthonormal frame.
Matrix sample_uniform_frame(int k, int n, RandomStream& rng);

// Symmetric concentration matrix for the Langevin density exp(tr(S P)) over
// k-flats of R^n; S is (n+1) x (n+1) and is symmetrized on construction.
class LangevinParams {
 public:
  LangevinParams(Matrix s, int k, int n);
  const Matrix& s() const noexcept { return s_; }
  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }

 private:
  Matrix s_;
  int k_;
  int n_;
};

// Langevin factor on the linear part (n x n symmetric S) times a spherical
// Gaussian of variance sigma2 on the displacement in ker(A A^T).
class LangevinGaussianParams {
 public:
  LangevinGaussianParams(Matrix s, double sigma2, int k, int n);
  const Matrix& s() const noexcept { return s_; }
  double sigma2() const noexcept { return sigma2_; }
  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }

 private:
  Matrix s_;
  double sigma2_;
  int k_;
  int n_;
};

// tr(S P) for P a rank-p projection, computed as mean(diag S) * p + tr(S_dev P)
// so that isotropic S gives an exact, draw-independent value.
double trace_against_projection(const Matrix& s, const Matrix& frame);

// log of the unnormalized Langevin density, tr(S P_{A+b}).
double langevin_log_density_unnormalized(const AffineFlat& flat, const LangevinParams& params);

struct NormalizerEstimate {
  double estimate;
  double std_error;
};

// Monte-Carlo estimate of the Langevin normalizer as the uniform expectation
// of exp(tr(S P)). Requires n_samples >= 100.
NormalizerEstimate langevin_normalizer(const LangevinParams& params, int n_samples, RandomStream& rng);

// Same estimator for the Langevin factor on linear k-planes of R^n used by
// the Langevin-Gaussian density (S is n x n).
NormalizerEstimate grassmann_langevin_normalizer(const Matrix& s, int k, int n, int n_samples, RandomStream& rng);

struct MetropolisConfig {
  double step_size = 0.1;  // radians
  int burn_in = 1000;
  int thin = 10;
};

struct ChainResult {
  std::vector<AffineFlat> samples;
  double acceptance_rate = 0.0;
};

// Runs n_steps of random-walk Metropolis-Hastings along geodesics from a
// uniform starting flat (or `start` when given) and returns the final state
// (single sample) together with the acceptance rate.
ChainResult sample_langevin(const LangevinParams& params, int n_steps, double step_size, RandomStream& rng,
                            const std::optional<AffineFlat>& start = std::nullopt);

// burn_in steps, then `count` states recorded every `thin` steps.
ChainResult langevin_chain(const LangevinParams& params, int count, const MetropolisConfig& config,
                           RandomStream& rng);

// Full log density; pass the log of the Grassmann Langevin normalizer to
// normalize the Langevin factor, or std::nullopt to leave it out.
double langevin_gaussian_log_density(const AffineFlat& flat, const LangevinGaussianParams& params,
                                     std::optional<double> log_normalizer = std::nullopt);

AffineFlat sample_langevin_gaussian(const LangevinGaussianParams& params, const MetropolisConfig& config,
                                    RandomStream& rng);

// Draws `count` flats: one Metropolis chain on the linear part (burn-in and
// thinning from config) plus an independent Gaussian displacement per draw.
ChainResult langevin_gaussian_chain(const LangevinGaussianParams& params, int count, const MetropolisConfig& config,
                                    RandomStream& rng);

}  // namespace graff
