#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzylln/interval.hpp"

namespace fuzzylln {

/// How the level map alpha -> v_alpha is read between knots.
enum class LevelMode {
  /// Endpoints interpolate linearly; the level map is continuous, so v_{a+} = v_a.
  piecewise_linear,
  /// Constant on each cell (a_{j-1}, a_j] with the value of knot j; left-continuous.
  left_continuous_step,
};

std::string_view to_string(LevelMode mode) noexcept;

struct AlphaKnot {
  double alpha = 0.0;
  Interval level;

  friend bool operator==(const AlphaKnot&, const AlphaKnot&) = default;
};

/// Outcome of check_valid(); `issue == none` means the knot family describes a
/// compact convex fuzzy number.
struct ValidityReport {
  enum class Issue {
    none,
    empty,
    alpha_out_of_range,
    missing_zero_knot,
    missing_one_knot,
    alphas_not_increasing,
    not_nested,
  };

  Issue issue = Issue::none;
  std::size_t index = 0;  // offending knot
  std::string message;

  bool ok() const noexcept { return issue == Issue::none; }
};

ValidityReport check_valid(std::span<const AlphaKnot> knots);

/// A fuzzy number on R held as finitely many nested alpha-levels.
///
/// Knots are strictly increasing in alpha from 0 to 1. The knot at alpha = 0
/// holds the support; in step mode its value is only reachable through
/// nestedness and arithmetic, since the level map on (0, a_1] is knot 1.
class FuzzyNumber {
public:
  /// Throws std::invalid_argument carrying the check_valid() message.
  FuzzyNumber(std::vector<AlphaKnot> knots, LevelMode mode);

  /// The indicator of {x}: every level is [x, x].
  static FuzzyNumber crisp(double x, LevelMode mode = LevelMode::piecewise_linear);

  std::span<const AlphaKnot> knots() const noexcept { return knots_; }
  LevelMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return knots_.size(); }

  friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

private:
  std::vector<AlphaKnot> knots_;
  LevelMode mode_;
};

ValidityReport check_valid(const FuzzyNumber& v);

/// `count` equally spaced alphas from 0 to 1 inclusive (count >= 2).
std::vector<double> uniform_alpha_grid(std::size_t count = 101);

/// Levels [center - (1 - a) * left, center + (1 - a) * right] at each grid alpha,
/// piecewise-linear. The grid must start at 0, end at 1 and increase strictly.
FuzzyNumber make_triangular(double center, double left_spread, double right_spread,
                            std::span<const double> grid);

/// v_alpha for alpha in (0, 1].
Interval level_set(const FuzzyNumber& v, double alpha);

/// v_{alpha+} = cl(union of v_beta, beta > alpha) for alpha in [0, 1).
Interval level_plus(const FuzzyNumber& v, double alpha);

/// Sorted union of both knot grids.
std::vector<double> merged_alphas(const FuzzyNumber& u, const FuzzyNumber& v);

/// sup over alpha in (0, 1] of hausdorff(u_alpha, v_alpha), computed exactly.
///
/// On each cell (a_i, a_{i+1}] of the merged grid both endpoint gaps are affine
/// (pwl) or constant (step), so the supremum over the cell is reached either at
/// a_{i+1} or as the right limit at a_i. Modes may differ.
double d_h_infty(const FuzzyNumber& u, const FuzzyNumber& v);

/// Levelwise Minkowski sum on the merged grid. Throws std::invalid_argument on
/// mode mismatch.
FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v);

/// Levelwise scalar multiple.
FuzzyNumber scale(double lambda, const FuzzyNumber& v);

/// d_h_infty(v, crisp 0).
double norm_f(const FuzzyNumber& v);

/// Running levelwise Minkowski sum of fuzzy numbers sharing one mode.
///
/// Terms on the same knot grid as the first one are accumulated in place;
/// other grids fall back to add().
class MinkowskiSum {
public:
  void add(const FuzzyNumber& v);

  std::size_t count() const noexcept { return count_; }

  /// Throws std::logic_error when nothing was added.
  FuzzyNumber sum() const;

  /// scale(1 / count, sum()).
  FuzzyNumber mean() const;

private:
  std::vector<AlphaKnot> knots_;
  LevelMode mode_ = LevelMode::piecewise_linear;
  std::size_t count_ = 0;
};

/// Cut points 0 = a_0 < a_1 < ... < a_m = 1 of the alpha axis.
class AlphaPartition {
public:
  /// Throws std::invalid_argument unless cuts increase strictly from 0 to 1.
  explicit AlphaPartition(std::vector<double> cuts);

  std::span<const double> cuts() const noexcept { return cuts_; }
  std::size_t cells() const noexcept { return cuts_.size() - 1; }

private:
  std::vector<double> cuts_;
};

/// max over cells k of hausdorff(v_{a_k}, v_{a_{k-1}+}).
double partition_drift(const FuzzyNumber& v, const AlphaPartition& partition);

/// Greedy upward scan: from each cut, advance to the largest knot whose level
/// stays strictly within eps of the right limit at the cut. A pwl cell that
/// already drifts by eps or more on its own gets an interior cut. Throws
/// std::invalid_argument unless eps > 0.
AlphaPartition epsilon_partition(const FuzzyNumber& v, double eps);

/// The three maxima bounding d_h_infty(u, w) over a partition built for w.
struct DecompositionTerms {
  double at_cuts = 0.0;          // max_k d_H(u_{a_k}, w_{a_k})
  double at_right_limits = 0.0;  // max_k d_H(u_{a_{k-1}+}, w_{a_{k-1}+})
  double drift = 0.0;            // max_k d_H(w_{a_k}, w_{a_{k-1}+})

  double bound() const noexcept { return at_cuts + at_right_limits + 2.0 * drift; }
};

DecompositionTerms decomposition_terms(const FuzzyNumber& u, const FuzzyNumber& w,
                                       const AlphaPartition& partition);

/// Raised by parse_literal(); `line()` is 1-based.
class LiteralError : public std::runtime_error {
public:
  LiteralError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Text form: a `mode: pwl|step` header, then one `alpha lo hi` line per knot.
/// Blank lines and `#` comments are ignored. Numbers print in shortest
/// round-trip form, so parse_literal(to_literal(v)) == v.
std::string to_literal(const FuzzyNumber& v);
FuzzyNumber parse_literal(std::string_view text);

}  // namespace fuzzylln
