#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fuzzylln/fuzzy_number.hpp"
#include "fuzzylln/models.hpp"

namespace fuzzylln {

/// (1/n) sum_{k=1}^{n} X^k(w), accumulated one index at a time.
FuzzyNumber sample_mean(const ModelSpec& model, std::size_t n, OmegaSeed omega);

/// (1/n) sum_{k=1}^{n} E[X^k].
FuzzyNumber expectation_mean(const ModelSpec& model, std::size_t n);

struct TrialResult {
  std::size_t n = 0;
  OmegaSeed omega;
  double distance = 0.0;  // d_H^inf(sample mean, expectation mean)
};

TrialResult run_trial(const ModelSpec& model, std::size_t n, OmegaSeed omega);

/// 95% Wilson score interval for a binomial proportion.
struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;

  double half_width() const noexcept { return 0.5 * (hi - lo); }
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = kWilsonZ95);

struct TailEstimate {
  double p_hat = 0.0;
  WilsonInterval ci;
  std::size_t exceedances = 0;
  std::size_t replications = 0;
  double mean_distance = 0.0;
};

/// Fraction of replications whose distance exceeds eps; replication r runs at
/// outcome derive_omega(master_seed, r).
TailEstimate tail_probability(const ModelSpec& model, std::size_t n, double eps,
                              std::size_t replications, std::uint64_t master_seed,
                              unsigned threads = 1);

/// max over grid alphas and both directions of variance_condition / eps^2.
double chebyshev_bound(const ModelSpec& model, std::size_t n, double eps);

/// P(|(1/n) sum_{k=1}^{n} cos(kU)| > eps) for U ~ Uniform(0, 2 pi), from the
/// Dirichlet-kernel closed form: the exceedance set is located on a uniform
/// grid of `quadrature_points` cells over (0, pi) and its boundary refined by
/// bisection.
double exact_tail_cosine(std::size_t n, double eps, std::size_t quadrature_points = 1u << 20);

struct StudyRow {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t replications = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double mean_distance = 0.0;
  double chebyshev_bound = 0.0;
  std::optional<double> oracle_tail;

  double half_width() const noexcept { return 0.5 * (ci_hi - ci_lo); }

  friend bool operator==(const StudyRow&, const StudyRow&) = default;
};

struct StudyResult {
  std::vector<StudyRow> rows;

  friend bool operator==(const StudyResult&, const StudyResult&) = default;
};

struct StudyOptions {
  std::vector<std::size_t> schedule = {10, 100, 1000, 10000};
  double eps = 0.1;
  std::size_t replications = 500;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency; results do not depend on it
  std::size_t quadrature_points = 1u << 20;
};

/// Chebyshev check on one scalar support mean: the empirical tail of
/// |(1/n) sum s(dir, X^k_alpha) - (1/n) sum E s(dir, X^k_alpha)| > eps against
/// variance_condition(alpha, dir) / eps^2. One entry per schedule point, for
/// the (alpha, dir) with the least slack.
struct EnvelopeCheck {
  std::size_t n = 0;
  double alpha = 0.0;
  Direction dir = Direction::plus;
  double p_hat = 0.0;
  double half_width = 0.0;
  double bound = 0.0;

  bool holds() const noexcept { return p_hat - half_width <= bound; }
};

/// Tail probabilities, Wilson intervals, Chebyshev bounds and (for the
/// cosine-center model) the quadrature oracle at each n of the schedule.
/// Throws std::invalid_argument for an empty or non-increasing schedule,
/// eps <= 0 or zero replications.
StudyResult convergence_study(const ModelSpec& model, const StudyOptions& options,
                              std::vector<EnvelopeCheck>* envelope = nullptr);

struct ConvergenceCriterion {
  double target = 0.02;
  double decrease_factor = 5.0;
};

/// p_hat at the largest n is below target, below p_hat at the smallest n by
/// decrease_factor, and the two Wilson intervals are disjoint.
bool converged(const StudyResult& result, const ConvergenceCriterion& criterion);

struct DecompositionReport {
  std::size_t n = 0;
  OmegaSeed omega;
  double eps = 0.0;
  std::size_t cells = 0;  // partition cells
  DecompositionTerms terms;
  double distance = 0.0;

  bool holds() const noexcept { return distance <= terms.bound(); }
};

/// Builds the eps-partition of the expectation mean and evaluates the three
/// maxima that bound the sample-mean distance.
DecompositionReport decomposition_diagnostic(const ModelSpec& model, std::size_t n,
                                             OmegaSeed omega, double eps);

/// CSV with header n,eps,replications,p_hat,ci_lo,ci_hi,mean_distance,chebyshev_bound,oracle_tail.
void write_study_csv(std::ostream& out, const StudyResult& result);
StudyResult read_study_csv(std::istream& in);

/// `n p_hat chebyshev_bound` per line after a `#` header.
void write_plot_data(std::ostream& out, const StudyResult& result);

}  // namespace fuzzylln
