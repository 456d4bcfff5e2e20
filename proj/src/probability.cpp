#include "graff/probability.hpp"

#include <cmath>
#include <array>
#include <functional>
#include <numbers>
#include <string>

#include "graff/errors.hpp"

namespace graff {

namespace {

constexpr int kMaxUniformAttempts = 100;

Matrix checked_symmetric(Matrix s, Eigen::Index size, const char* who) {
  if (s.rows() != size || s.cols() != size)
    throw DimensionError(std::string(who) + ": S must be " + std::to_string(size) + " x " + std::to_string(size));
  if (!s.allFinite()) throw InvalidArgument(std::string(who) + ": S has non-finite entries");
  const double asym = (s - s.transpose()).norm();
  if (asym > 1e-10 * s.norm()) throw InvalidArgument(std::string(who) + ": S is not symmetric");
  return 0.5 * (s + s.transpose());
}

Matrix orthonormal_frame(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

// Welford accumulation; identical inputs give exactly zero spread.
struct RunningMoments {
  double mean = 0.0;
  double m2 = 0.0;
  long count = 0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double std_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

// Random-walk Metropolis on the Grassmannian of p-planes in R^m, targeting
// exp(tr(S Y Y^T)). Proposals follow the geodesic from Y along
// step_size * (I - Y Y^T) G with G standard Gaussian, a proposal that is
// symmetric in its endpoints. `admissible` vetoes proposals (used to
// reject planes outside the image of the affine embedding).
class GrassmannWalk {
 public:
  GrassmannWalk(const Matrix& s, Matrix start, double step_size, std::function<bool(const Matrix&)> admissible)
      : s_(s), frame_(std::move(start)), step_(step_size), admissible_(std::move(admissible)) {
    if (!(step_size > 0.0)) throw InvalidArgument("step_size must be positive");
    log_density_ = trace_against_projection(s_, frame_);
  }

  void step(RandomStream& rng) {
    ++steps_;
    const Eigen::Index p = frame_.cols();
    if (p == 0 || p == frame_.rows()) {
      ++accepted_;
      return;
    }
    Matrix g = rng.normal_matrix(frame_.rows(), p);
    Matrix tangent = step_ * (g - frame_ * (frame_.transpose() * g));
    Eigen::JacobiSVD<Matrix> svd(tangent, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& angles = svd.singularValues();
    Matrix proposal = frame_ * svd.matrixV() * angles.array().cos().matrix().asDiagonal() +
                      svd.matrixU() * angles.array().sin().matrix().asDiagonal();
    proposal = orthonormal_frame(proposal);
    const double u = rng.uniform();
    if (!admissible_(proposal)) return;
    const double proposal_log_density = trace_against_projection(s_, proposal);
    const double delta = proposal_log_density - log_density_;
    if (delta >= 0.0 || std::log(u) < delta) {
      frame_ = std::move(proposal);
      log_density_ = proposal_log_density;
      ++accepted_;
    }
  }

  const Matrix& frame() const noexcept { return frame_; }
  double acceptance_rate() const noexcept {
    return steps_ == 0 ? 1.0 : static_cast<double>(accepted_) / static_cast<double>(steps_);
  }

 private:
  Matrix s_;
  Matrix frame_;
  double step_;
  std::function<bool(const Matrix&)> admissible_;
  double log_density_ = 0.0;
  long steps_ = 0;
  long accepted_ = 0;
};

bool inside_affine_chart(const Matrix& frame) {
  return frame.row(frame.rows() - 1).norm() >= kNotAFlatThreshold;
}

void check_config(const MetropolisConfig& config) {
  if (!(config.step_size > 0.0)) throw InvalidArgument("step_size must be positive");
  if (config.burn_in < 0) throw InvalidArgument("burn_in must be nonnegative");
  if (config.thin < 1) throw InvalidArgument("thin must be at least 1");
}

}  // namespace

Matrix RandomStream::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Vector RandomStream::normal_vector(Eigen::Index size) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal();
  return v;
}

RandomStream RandomStream::derived(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint64_t mixed = 0;
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  mixed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return RandomStream(mixed);
}

AffineFlat sample_uniform(int k, int n, RandomStream& rng) {
  if (k < 0 || k >= n) throw DimensionError("sample_uniform needs 0 <= k < n");
  for (int attempt = 0; attempt < kMaxUniformAttempts; ++attempt) {
    try {
      return unembed(rng.normal_matrix(n + 1, k + 1));
    } catch (const NotAFlat&) {
    } catch (const RankDeficient&) {
    }
  }
  throw InternalError("sample_uniform failed to draw a flat in " + std::to_string(kMaxUniformAttempts) + " attempts");
}

Matrix sample_uniform_frame(int k, int n, RandomStream& rng) {
  if (k < 0 || k > n) throw DimensionError("sample_uniform_frame needs 0 <= k <= n");
  if (k == 0) return Matrix(n, 0);
  return orthonormal_frame(rng.normal_matrix(n, k));
}

LangevinParams::LangevinParams(Matrix s, int k, int n) : k_(k), n_(n) {
  if (k < 0 || k >= n) throw DimensionError("Langevin parameters need 0 <= k < n");
  s_ = checked_symmetric(std::move(s), n + 1, "LangevinParams");
}

LangevinGaussianParams::LangevinGaussianParams(Matrix s, double sigma2, int k, int n)
    : sigma2_(sigma2), k_(k), n_(n) {
  if (k < 0 || k >= n) throw DimensionError("Langevin-Gaussian parameters need 0 <= k < n");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument("sigma2 must be positive and finite");
  s_ = checked_symmetric(std::move(s), n, "LangevinGaussianParams");
}

double trace_against_projection(const Matrix& s, const Matrix& frame) {
  const Eigen::Index p = frame.cols();
  if (s.rows() != frame.rows()) throw DimensionError("S and frame disagree on the ambient dimension");
  if (p == 0 || s.rows() == 0) return 0.0;
  // tr(P) = p exactly, so shifting S by a multiple of I only adds shift * p.
  const double shift = s(0, 0);
  Matrix deviation = s;
  deviation.diagonal().array() -= shift;
  return shift * static_cast<double>(p) + (frame.transpose() * deviation * frame).trace();
}

double langevin_log_density_unnormalized(const AffineFlat& flat, const LangevinParams& params) {
  if (flat.ambient_dim() != params.n() || flat.dim() != params.k())
    throw DimensionError("flat does not match the Langevin parameters' (k, n)");
  return trace_against_projection(params.s(), stiefel_coords(flat));
}

NormalizerEstimate langevin_normalizer(const LangevinParams& params, int n_samples, RandomStream& rng) {
  if (n_samples < 100) throw InvalidArgument("langevin_normalizer needs at least 100 samples");
  RunningMoments moments;
  for (int i = 0; i < n_samples; ++i) {
    const AffineFlat flat = sample_uniform(params.k(), params.n(), rng);
    moments.add(std::exp(trace_against_projection(params.s(), stiefel_coords(flat))));
  }
  return {moments.mean, moments.std_error()};
}

NormalizerEstimate grassmann_langevin_normalizer(const Matrix& s, int k, int n, int n_samples, RandomStream& rng) {
  if (n_samples < 100) throw InvalidArgument("grassmann_langevin_normalizer needs at least 100 samples");
  if (s.rows() != n || s.cols() != n) throw DimensionError("S must be n x n");
  RunningMoments moments;
  for (int i = 0; i < n_samples; ++i) {
    moments.add(std::exp(trace_against_projection(s, sample_uniform_frame(k, n, rng))));
  }
  return {moments.mean, moments.std_error()};
}

ChainResult sample_langevin(const LangevinParams& params, int n_steps, double step_size, RandomStream& rng,
                            const std::optional<AffineFlat>& start) {
  if (n_steps < 1) throw InvalidArgument("n_steps must be at least 1");
  const AffineFlat initial = start ? *start : sample_uniform(params.k(), params.n(), rng);
  if (initial.ambient_dim() != params.n() || initial.dim() != params.k())
    throw DimensionError("start flat does not match the Langevin parameters' (k, n)");
  GrassmannWalk walk(params.s(), stiefel_coords(initial), step_size, inside_affine_chart);
  for (int i = 0; i < n_steps; ++i) walk.step(rng);
  ChainResult out;
  out.samples.push_back(unembed(walk.frame()));
  out.acceptance_rate = walk.acceptance_rate();
  return out;
}

ChainResult langevin_chain(const LangevinParams& params, int count, const MetropolisConfig& config,
                           RandomStream& rng) {
  check_config(config);
  if (count < 0) throw InvalidArgument("count must be nonnegative");
  const AffineFlat initial = sample_uniform(params.k(), params.n(), rng);
  GrassmannWalk walk(params.s(), stiefel_coords(initial), config.step_size, inside_affine_chart);
  for (int i = 0; i < config.burn_in; ++i) walk.step(rng);
  ChainResult out;
  out.samples.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    for (int i = 0; i < config.thin; ++i) walk.step(rng);
    out.samples.push_back(unembed(walk.frame()));
  }
  out.acceptance_rate = walk.acceptance_rate();
  return out;
}

double langevin_gaussian_log_density(const AffineFlat& flat, const LangevinGaussianParams& params,
                                     std::optional<double> log_normalizer) {
  if (flat.ambient_dim() != params.n() || flat.dim() != params.k())
    throw DimensionError("flat does not match the Langevin-Gaussian parameters' (k, n)");
  const double sigma2 = params.sigma2();
  const int codim = params.n() - params.k();
  double value = trace_against_projection(params.s(), flat.basis());
  value -= flat.offset().squaredNorm() / (2.0 * sigma2);
  value -= 0.5 * codim * std::log(2.0 * std::numbers::pi * sigma2);
  if (log_normalizer) value -= *log_normalizer;
  return value;
}

ChainResult langevin_gaussian_chain(const LangevinGaussianParams& params, int count, const MetropolisConfig& config,
                                    RandomStream& rng) {
  check_config(config);
  if (count < 0) throw InvalidArgument("count must be nonnegative");
  const int k = params.k();
  const int n = params.n();
  const double sigma = std::sqrt(params.sigma2());

  GrassmannWalk walk(params.s(), sample_uniform_frame(k, n, rng), config.step_size,
                     [](const Matrix&) { return true; });
  for (int i = 0; i < config.burn_in; ++i) walk.step(rng);

  ChainResult out;
  out.samples.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    for (int i = 0; i < config.thin; ++i) walk.step(rng);
    Matrix basis = walk.frame();
    normalize_column_signs(basis);
    Vector offset = sigma * rng.normal_vector(n);
    if (k > 0) {
      offset -= basis * (basis.transpose() * offset);
      offset -= basis * (basis.transpose() * offset);
    }
    out.samples.push_back(AffineFlat::from_orthogonal(std::move(basis), std::move(offset)));
  }
  out.acceptance_rate = walk.acceptance_rate();
  return out;
}

AffineFlat sample_langevin_gaussian(const LangevinGaussianParams& params, const MetropolisConfig& config,
                                    RandomStream& rng) {
  return langevin_gaussian_chain(params, 1, config, rng).samples.front();
}

}  // namespace graff
