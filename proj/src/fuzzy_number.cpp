#include "fuzzylln/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "fuzzylln/text.hpp"

namespace fuzzylln {

namespace {

std::string describe(double x) { return text::format_double(x); }

bool same_grid(std::span<const AlphaKnot> a, std::span<const AlphaKnot> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const AlphaKnot& x, const AlphaKnot& y) { return x.alpha == y.alpha; });
}

// First knot with alpha >= a.
std::size_t lower_knot(std::span<const AlphaKnot> knots, double a) {
  auto it = std::lower_bound(knots.begin(), knots.end(), a,
                             [](const AlphaKnot& k, double x) { return k.alpha < x; });
  return static_cast<std::size_t>(it - knots.begin());
}

// First knot with alpha > a.
std::size_t upper_knot(std::span<const AlphaKnot> knots, double a) {
  auto it = std::upper_bound(knots.begin(), knots.end(), a,
                             [](double x, const AlphaKnot& k) { return x < k.alpha; });
  return static_cast<std::size_t>(it - knots.begin());
}

// Level map for alpha in [0, 1]; at alpha = 0 this is the stored support knot.
Interval level_at(const FuzzyNumber& v, double alpha) {
  auto knots = v.knots();
  std::size_t j = lower_knot(knots, alpha);
  const AlphaKnot& upper = knots[j];
  if (upper.alpha == alpha || v.mode() == LevelMode::left_continuous_step) {
    return upper.level;
  }
  const AlphaKnot& lower = knots[j - 1];
  const double t = (alpha - lower.alpha) / (upper.alpha - lower.alpha);
  const Interval& a = lower.level;
  const Interval& b = upper.level;
  // Clamping keeps the interpolant inside the bracketing levels despite rounding.
  double lo = std::clamp(a.lo() + t * (b.lo() - a.lo()), a.lo(), b.lo());
  double hi = std::clamp(a.hi() + t * (b.hi() - a.hi()), b.hi(), a.hi());
  return Interval(lo, hi);
}

}  // namespace

std::string_view to_string(LevelMode mode) noexcept {
  return mode == LevelMode::piecewise_linear ? "pwl" : "step";
}

ValidityReport check_valid(std::span<const AlphaKnot> knots) {
  using Issue = ValidityReport::Issue;
  auto fail = [](Issue issue, std::size_t index, std::string msg) {
    return ValidityReport{issue, index, std::move(msg)};
  };

  if (knots.empty()) return fail(Issue::empty, 0, "no knots");

  for (std::size_t j = 0; j < knots.size(); ++j) {
    const double a = knots[j].alpha;
    if (!(a >= 0.0 && a <= 1.0)) {
      return fail(Issue::alpha_out_of_range, j,
                  "knot " + std::to_string(j) + ": alpha " + describe(a) + " outside [0, 1]");
    }
    if (j > 0 && !(knots[j - 1].alpha < a)) {
      return fail(Issue::alphas_not_increasing, j,
                  "knot " + std::to_string(j) + ": alpha " + describe(a) +
                      " does not exceed previous alpha " + describe(knots[j - 1].alpha));
    }
  }
  if (knots.front().alpha != 0.0) {
    return fail(Issue::missing_zero_knot, 0, "first knot must sit at alpha = 0 (support)");
  }
  if (knots.back().alpha != 1.0) {
    return fail(Issue::missing_one_knot, knots.size() - 1,
                "last knot must sit at alpha = 1 (core)");
  }
  for (std::size_t j = 1; j < knots.size(); ++j) {
    if (!knots[j - 1].level.contains(knots[j].level)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "knot " << j << ": level " << knots[j].level << " at alpha " << knots[j].alpha
          << " is not contained in " << knots[j - 1].level;
      return fail(Issue::not_nested, j, msg.str());
    }
  }
  return {};
}

ValidityReport check_valid(const FuzzyNumber& v) { return check_valid(v.knots()); }

FuzzyNumber::FuzzyNumber(std::vector<AlphaKnot> knots, LevelMode mode)
    : knots_(std::move(knots)), mode_(mode) {
  if (auto report = check_valid(knots_); !report.ok()) {
    throw std::invalid_argument("invalid fuzzy number: " + report.message);
  }
}

FuzzyNumber FuzzyNumber::crisp(double x, LevelMode mode) {
  return FuzzyNumber({{0.0, Interval::point(x)}, {1.0, Interval::point(x)}}, mode);
}

std::vector<double> uniform_alpha_grid(std::size_t count) {
  if (count < 2) throw std::invalid_argument("an alpha grid needs at least two knots");
  std::vector<double> grid(count);
  const double denom = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) grid[j] = static_cast<double>(j) / denom;
  return grid;
}

FuzzyNumber make_triangular(double center, double left_spread, double right_spread,
                            std::span<const double> grid) {
  if (!(left_spread >= 0.0) || !(right_spread >= 0.0)) {
    throw std::invalid_argument("triangular spreads must be nonnegative");
  }
  std::vector<AlphaKnot> knots;
  knots.reserve(grid.size());
  for (double a : grid) {
    const double w = 1.0 - a;
    knots.push_back({a, Interval(center - w * left_spread, center + w * right_spread)});
  }
  return FuzzyNumber(std::move(knots), LevelMode::piecewise_linear);
}

Interval level_set(const FuzzyNumber& v, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("level_set: alpha " + describe(alpha) + " outside (0, 1]");
  }
  return level_at(v, alpha);
}

Interval level_plus(const FuzzyNumber& v, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("level_plus: alpha " + describe(alpha) + " outside [0, 1)");
  }
  if (v.mode() == LevelMode::piecewise_linear) return level_at(v, alpha);
  return v.knots()[upper_knot(v.knots(), alpha)].level;
}

std::vector<double> merged_alphas(const FuzzyNumber& u, const FuzzyNumber& v) {
  std::vector<double> out;
  out.reserve(u.size() + v.size());
  for (const auto& k : u.knots()) out.push_back(k.alpha);
  for (const auto& k : v.knots()) out.push_back(k.alpha);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double d_h_infty(const FuzzyNumber& u, const FuzzyNumber& v) {
  double best = 0.0;
  if (u.mode() == v.mode() && same_grid(u.knots(), v.knots())) {
    // Step mode never reaches the alpha = 0 knot; pwl reaches it as a limit.
    const std::size_t first = u.mode() == LevelMode::piecewise_linear ? 0 : 1;
    for (std::size_t j = first; j < u.size(); ++j) {
      best = std::max(best, hausdorff(u.knots()[j].level, v.knots()[j].level));
    }
    return best;
  }
  const auto alphas = merged_alphas(u, v);
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    best = std::max(best, hausdorff(level_at(u, alphas[i + 1]), level_at(v, alphas[i + 1])));
    best = std::max(best, hausdorff(level_plus(u, alphas[i]), level_plus(v, alphas[i])));
  }
  return best;
}

FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v) {
  if (u.mode() != v.mode()) {
    throw std::invalid_argument("cannot add fuzzy numbers with different level modes");
  }
  std::vector<AlphaKnot> knots;
  if (same_grid(u.knots(), v.knots())) {
    knots.reserve(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      knots.push_back({u.knots()[j].alpha,
                       minkowski_add(u.knots()[j].level, v.knots()[j].level)});
    }
  } else {
    const auto alphas = merged_alphas(u, v);
    knots.reserve(alphas.size());
    for (double a : alphas) {
      knots.push_back({a, minkowski_add(level_at(u, a), level_at(v, a))});
    }
  }
  return FuzzyNumber(std::move(knots), u.mode());
}

FuzzyNumber scale(double lambda, const FuzzyNumber& v) {
  std::vector<AlphaKnot> knots;
  knots.reserve(v.size());
  for (const auto& k : v.knots()) knots.push_back({k.alpha, scale(lambda, k.level)});
  return FuzzyNumber(std::move(knots), v.mode());
}

double norm_f(const FuzzyNumber& v) {
  const std::size_t first = v.mode() == LevelMode::piecewise_linear ? 0 : 1;
  double best = 0.0;
  for (std::size_t j = first; j < v.size(); ++j) best = std::max(best, norm_k(v.knots()[j].level));
  return best;
}

void MinkowskiSum::add(const FuzzyNumber& v) {
  if (count_ == 0) {
    knots_.assign(v.knots().begin(), v.knots().end());
    mode_ = v.mode();
  } else if (v.mode() != mode_) {
    throw std::invalid_argument("cannot add fuzzy numbers with different level modes");
  } else if (same_grid(knots_, v.knots())) {
    for (std::size_t j = 0; j < knots_.size(); ++j) {
      knots_[j].level = minkowski_add(knots_[j].level, v.knots()[j].level);
    }
  } else {
    FuzzyNumber merged = fuzzylln::add(FuzzyNumber(knots_, mode_), v);
    knots_.assign(merged.knots().begin(), merged.knots().end());
  }
  ++count_;
}

FuzzyNumber MinkowskiSum::sum() const {
  if (count_ == 0) throw std::logic_error("MinkowskiSum is empty");
  return FuzzyNumber(knots_, mode_);
}

FuzzyNumber MinkowskiSum::mean() const {
  return scale(1.0 / static_cast<double>(count_), sum());
}

AlphaPartition::AlphaPartition(std::vector<double> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.size() < 2 || cuts_.front() != 0.0 || cuts_.back() != 1.0) {
    throw std::invalid_argument("partition must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < cuts_.size(); ++k) {
    if (!(cuts_[k - 1] < cuts_[k])) {
      throw std::invalid_argument("partition cuts must increase strictly");
    }
  }
}

double partition_drift(const FuzzyNumber& v, const AlphaPartition& partition) {
  auto cuts = partition.cuts();
  double best = 0.0;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    best = std::max(best, hausdorff(level_set(v, cuts[k]), level_plus(v, cuts[k - 1])));
  }
  return best;
}

AlphaPartition epsilon_partition(const FuzzyNumber& v, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon_partition: eps must be positive");
  auto knots = v.knots();
  std::vector<double> cuts{0.0};
  double prev = 0.0;
  while (prev < 1.0) {
    const Interval base = level_plus(v, prev);
    // d_H(v_a, v_{prev+}) is nondecreasing in a, so the scan stops at the first miss.
    double chosen = prev;
    for (std::size_t j = upper_knot(knots, prev); j < knots.size(); ++j) {
      if (!(hausdorff(knots[j].level, base) < eps)) break;
      chosen = knots[j].alpha;
    }
    if (chosen == prev) {
      // Only a pwl cell can drift by eps on its own; cut inside it.
      const double next = knots[upper_knot(knots, prev)].alpha;
      const double full = hausdorff(level_set(v, next), base);
      double a = prev + (next - prev) * (eps / full);
      while (a > prev && !(hausdorff(level_set(v, a), base) < eps)) a = prev + 0.5 * (a - prev);
      if (!(a > prev)) throw std::runtime_error("epsilon_partition: cell cannot be refined");
      chosen = a;
    }
    cuts.push_back(chosen);
    prev = chosen;
  }
  return AlphaPartition(std::move(cuts));
}

DecompositionTerms decomposition_terms(const FuzzyNumber& u, const FuzzyNumber& w,
                                       const AlphaPartition& partition) {
  auto cuts = partition.cuts();
  DecompositionTerms t;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const Interval w_cut = level_set(w, cuts[k]);
    const Interval w_limit = level_plus(w, cuts[k - 1]);
    t.at_cuts = std::max(t.at_cuts, hausdorff(level_set(u, cuts[k]), w_cut));
    t.at_right_limits = std::max(t.at_right_limits, hausdorff(level_plus(u, cuts[k - 1]), w_limit));
    t.drift = std::max(t.drift, hausdorff(w_cut, w_limit));
  }
  return t;
}

LiteralError::LiteralError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string to_literal(const FuzzyNumber& v) {
  std::string out = "mode: ";
  out += to_string(v.mode());
  out += '\n';
  for (const auto& k : v.knots()) {
    out += text::format_double(k.alpha);
    out += ' ';
    out += text::format_double(k.level.lo());
    out += ' ';
    out += text::format_double(k.level.hi());
    out += '\n';
  }
  return out;
}

FuzzyNumber parse_literal(std::string_view input) {
  std::optional<LevelMode> mode;
  std::vector<AlphaKnot> knots;
  std::vector<std::size_t> knot_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    auto end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;

    if (!mode) {
      constexpr std::string_view prefix = "mode:";
      if (!line.starts_with(prefix)) throw LiteralError(line_no, "expected 'mode: pwl|step' header");
      auto name = text::trim(line.substr(prefix.size()));
      if (name == "pwl") mode = LevelMode::piecewise_linear;
      else if (name == "step") mode = LevelMode::left_continuous_step;
      else throw LiteralError(line_no, "unknown mode '" + std::string(name) + "'");
      continue;
    }

    auto fields = text::split_ws(line);
    if (fields.size() != 3) throw LiteralError(line_no, "expected 'alpha lo hi'");
    try {
      const double a = text::parse_double(fields[0]);
      knots.push_back({a, Interval(text::parse_double(fields[1]), text::parse_double(fields[2]))});
    } catch (const std::invalid_argument& e) {
      throw LiteralError(line_no, e.what());
    }
    knot_lines.push_back(line_no);
  }
  if (!mode) throw LiteralError(line_no, "missing 'mode:' header");
  if (auto report = check_valid(knots); !report.ok()) {
    std::size_t at = knot_lines.empty() ? line_no : knot_lines[std::min(report.index, knot_lines.size() - 1)];
    throw LiteralError(at, report.message);
  }
  return FuzzyNumber(std::move(knots), *mode);
}

}  // namespace fuzzylln
