#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "fuzzylln/fuzzy_number.hpp"
#include "fuzzylln/interval.hpp"

namespace fuzzylln {

/// Families of fuzzy random variable sequences {X^k, k >= 1}. Every member is a
/// triangular fuzzy number on the model's alpha grid.
enum class ModelKind {
  /// tri(c + s Z_k, l, r), Z_k iid standard normal.
  iid_triangular,
  /// tri(c + s cos(kU), l, r), one U ~ Uniform(0, 2 pi) per outcome:
  /// pairwise uncorrelated but dependent.
  cosine_center,
  /// Symmetric tri with center c + s cos(kU) and spread w0 (1 + b0 sin(kU)).
  cosine_center_spread,
  /// tri(c + s Z, l, r) with a single Z for all k; fully correlated.
  shared_shift_correlated,
};

std::string_view to_string(ModelKind kind) noexcept;

/// Throws std::invalid_argument for names other than those printed by to_string().
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::cosine_center;
  double center = 0.0;
  double left_spread = 1.0;
  double right_spread = 1.0;
  double base_spread = 1.0;  // w0, cosine-center-spread only
  double modulation = 0.5;   // b0 in [0, 1), cosine-center-spread only
  double noise = 1.0;        // s, scale of the random center shift
  std::vector<double> grid = uniform_alpha_grid();

  /// Throws std::invalid_argument on negative spreads/noise, b0 outside [0, 1)
  /// or a malformed grid.
  void validate() const;
};

/// One sample point of the underlying probability space. The whole sequence
/// X^1(w), X^2(w), ... is a deterministic function of it.
struct OmegaSeed {
  std::uint64_t value = 0;

  friend bool operator==(const OmegaSeed&, const OmegaSeed&) = default;
};

/// Outcome `index` of the stream rooted at `master`.
OmegaSeed derive_omega(std::uint64_t master, std::uint64_t index) noexcept;

/// The randomness shared by every index k at one outcome.
struct OmegaDraw {
  OmegaSeed omega;
  double phase = 0.0;  // U, cosine families
  double shift = 0.0;  // Z, shared-shift family
};

OmegaDraw realize(const ModelSpec& model, OmegaSeed omega);

/// X^k(w). Throws std::invalid_argument for k = 0.
FuzzyNumber sample(const ModelSpec& model, std::size_t k, const OmegaDraw& draw);
FuzzyNumber sample(const ModelSpec& model, std::size_t k, OmegaSeed omega);

/// E[X^k], taken levelwise as the interval of endpoint means.
FuzzyNumber analytic_expectation(const ModelSpec& model, std::size_t k);

/// Levelwise mean of X^k over outcomes derive_omega(seed, 0 .. n_draws - 1).
FuzzyNumber mc_expectation(const ModelSpec& model, std::size_t k, std::size_t n_draws,
                           std::uint64_t seed);

/// Which level of a sampled fuzzy number a support value is read from.
enum class LevelKind {
  at,           // v_alpha, alpha in (0, 1]
  right_limit,  // v_{alpha+}, alpha in [0, 1)
};

/// s(dir, X^k(w)_alpha), or s(dir, X^k(w)_{alpha+}) for LevelKind::right_limit.
double support_sample(const ModelSpec& model, std::size_t k, double alpha, Direction dir,
                      OmegaSeed omega, LevelKind level = LevelKind::at);

/// support_sample over outcomes derive_omega(seed, i), i = 0 .. n_draws - 1.
std::vector<double> support_stream(const ModelSpec& model, std::size_t k, double alpha,
                                   Direction dir, LevelKind level, std::size_t n_draws,
                                   std::uint64_t seed);

/// Sample covariance of two support processes across shared outcomes.
struct CovReport {
  std::size_t k = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  Direction dir_k = Direction::plus;
  Direction dir_m = Direction::plus;
  LevelKind level = LevelKind::at;
  double cov_hat = 0.0;
  double std_err = 0.0;
  std::size_t n_samples = 0;
  bool flagged = false;

  bool same_direction() const noexcept { return dir_k == dir_m; }

  friend bool operator==(const CovReport&, const CovReport&) = default;
};

/// Unbiased (n - 1) sample covariance with plug-in standard error
/// sd((x - mean x)(y - mean y)) / sqrt(n).
struct CovEstimate {
  double cov = 0.0;
  double std_err = 0.0;
};
CovEstimate sample_covariance(std::span<const double> xs, std::span<const double> ys);

/// Covariance of s(dir, X^k_alpha) and s(dir, X^m_alpha); flagged when
/// |cov_hat| > z * std_err. Requires k != m and n_draws >= 30.
CovReport estimate_cov(const ModelSpec& model, std::size_t k, std::size_t m, double alpha,
                       Direction dir, std::size_t n_draws, std::uint64_t seed,
                       LevelKind level = LevelKind::at, double z = 4.0);

/// Closed-form Var(s(dir, X^k_alpha)); alpha = 0 means the support v_{0+}.
double variance_of_support(const ModelSpec& model, std::size_t k, double alpha, Direction dir);

/// (1 / n^2) * sum_{k=1}^{n} Var(s(dir, X^k_alpha)).
double variance_condition(const ModelSpec& model, std::size_t n, double alpha, Direction dir);

struct UncorrelatednessOptions {
  std::size_t max_k = 6;
  std::vector<double> alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::size_t n_draws = 100000;
  std::uint64_t seed = 0;
  double z = 4.0;
};

/// CovReports for all pairs k < m <= max_k, every alpha, both level kinds where
/// defined (v_alpha needs alpha > 0, v_{alpha+} needs alpha < 1) and all four
/// direction pairs. Only same-direction rows can be flagged.
std::vector<CovReport> uncorrelatedness_report(const ModelSpec& model,
                                               const UncorrelatednessOptions& options);

/// CSV with header k,m,alpha,dir,cov_hat,std_err,n_samples,flagged,level.
/// `dir` is "+1"/"-1", or "+1/-1" style for cross-direction rows; `level` is
/// "set" or "plus".
void write_cov_csv(std::ostream& out, std::span<const CovReport> rows);
std::vector<CovReport> read_cov_csv(std::istream& in);

}  // namespace fuzzylln
