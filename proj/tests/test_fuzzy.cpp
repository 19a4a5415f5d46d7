#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fuzzylln/fuzzy_number.hpp"
#include "fuzzylln/oracle.hpp"
#include "generators.hpp"

using namespace fuzzylln;
using fuzzylln::testing::Gen;

namespace {

const std::vector<double> kGrid = uniform_alpha_grid(101);

FuzzyNumber tri(double c, double l, double r) { return make_triangular(c, l, r, kGrid); }

FuzzyNumber with_mode(const FuzzyNumber& v, LevelMode mode) {
  return FuzzyNumber({v.knots().begin(), v.knots().end()}, mode);
}

FuzzyNumber knots3(LevelMode mode) {
  return FuzzyNumber({{0.0, {0, 4}}, {0.5, {1, 3}}, {1.0, {2, 2}}}, mode);
}

// Triangular membership function, thresholded on a fine x grid.
Interval threshold_membership(double c, double l, double r, double alpha) {
  auto mu = [&](double x) {
    if (x <= c) return l > 0 ? std::max(0.0, 1.0 - (c - x) / l) : (x == c ? 1.0 : 0.0);
    return r > 0 ? std::max(0.0, 1.0 - (x - c) / r) : 0.0;
  };
  double lo = INFINITY, hi = -INFINITY;
  for (double x = c - l - 1; x <= c + r + 1; x += 1e-4) {
    if (mu(x) >= alpha) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  return Interval(lo, hi);
}

double min_cell(const FuzzyNumber& v) {
  double w = 1.0;
  for (std::size_t j = 1; j < v.size(); ++j) w = std::min(w, v.knots()[j].alpha - v.knots()[j - 1].alpha);
  return w;
}

}  // namespace

TEST_CASE("make_triangular") {
  const auto crisp = tri(0, 0, 0);
  for (const auto& k : crisp.knots()) CHECK(k.level == Interval::point(0));
  CHECK(level_set(tri(1, 1, 1), 1.0) == Interval(1, 1));

  const Interval by_threshold = threshold_membership(0, 2, 1, 0.5);
  CHECK(by_threshold.lo() == doctest::Approx(-1).epsilon(1e-3));
  CHECK(by_threshold.hi() == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(level_set(tri(0, 2, 1), 0.5) == Interval(-1, 0.5));

  CHECK_THROWS_AS(tri(0, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_triangular(0, 1, 1, std::vector<double>{0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("level_set") {
  const FuzzyNumber pwl({{0.0, {0, 4}}, {1.0, {1, 2}}}, LevelMode::piecewise_linear);
  const FuzzyNumber step({{0.0, {0, 4}}, {1.0, {1, 2}}}, LevelMode::left_continuous_step);
  CHECK(level_set(pwl, 1.0) == Interval(1, 2));
  CHECK(level_set(step, 1.0) == Interval(1, 2));
  CHECK(level_set(pwl, 0.5) == Interval(0.5, 3));
  CHECK(level_set(step, 0.5) == Interval(1, 2));

  const auto v = knots3(LevelMode::left_continuous_step);
  CHECK(level_set(v, 0.5) == Interval(1, 3));
  CHECK(level_set(v, 0.3) == Interval(1, 3));
  CHECK(level_set(v, 0.7) == Interval(2, 2));

  CHECK_THROWS_AS(level_set(pwl, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(level_set(pwl, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(level_set(pwl, -0.1), std::invalid_argument);
}

TEST_CASE("level_plus") {
  const auto v = tri(0.5, 2, 3);
  for (double a : {0.013, 0.25, 0.5, 0.77, 0.999}) CHECK(level_plus(v, a) == level_set(v, a));

  const auto s = knots3(LevelMode::left_continuous_step);
  CHECK(level_plus(s, 0.5) == Interval(2, 2));
  CHECK(level_plus(s, 0.2) == Interval(1, 3));
  CHECK(level_plus(s, 0.0) == Interval(1, 3));

  Gen gen(7);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.fuzzy(gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step);
    const Interval support0 = level_plus(f, 0.0);
    for (int j = 0; j < 20; ++j) CHECK(support0.contains(level_set(f, gen.uniform(1e-9, 1.0))));
  }
  CHECK_THROWS_AS(level_plus(v, 1.0), std::invalid_argument);
}

TEST_CASE("step mode is left-continuous at knots") {
  Gen gen(8);
  for (int i = 0; i < 200; ++i) {
    const auto v = gen.fuzzy(LevelMode::left_continuous_step);
    for (std::size_t j = 1; j < v.size(); ++j) {
      const double a = v.knots()[j].alpha;
      const double gap = a - v.knots()[j - 1].alpha;
      for (double t : {0.5, 0.1, 1e-3, 1e-9}) {
        CHECK(hausdorff(level_set(v, a - t * gap), level_set(v, a)) == 0.0);
      }
    }
  }
}

TEST_CASE("right limits of a converging sequence") {
  const double c = 0.3, l = 1.5, r = 0.75;
  for (LevelMode mode : {LevelMode::piecewise_linear, LevelMode::left_continuous_step}) {
    const auto v = with_mode(tri(c, l, r), mode);
    for (double a : {0.0, 0.2, 0.505, 0.99}) {
      double previous = INFINITY;
      for (int n = 1; n <= 1000; n *= 10) {
        const double delta = 1.0 / n;
        const auto vn = with_mode(tri(c + delta, l, r), mode);
        CHECK(d_h_infty(vn, v) == doctest::Approx(delta).epsilon(1e-12));
        const double gap = hausdorff(level_plus(vn, a), level_plus(v, a));
        CHECK(gap <= previous);
        CHECK(gap == doctest::Approx(delta).epsilon(1e-9));
        previous = gap;
      }
      double previous_beta = INFINITY;
      for (double h : {0.1, 0.01, 1e-3, 1e-6}) {
        const double beta = std::min(1.0, a + h);
        const double gap = hausdorff(level_set(v, beta), level_plus(v, a));
        CHECK(gap <= previous_beta + 1e-15);
        previous_beta = gap;
      }
      CHECK(previous_beta <= 1e-5);
    }
  }
}

TEST_CASE("d_h_infty examples") {
  const auto v = tri(0, 1, 1);
  CHECK(d_h_infty(v, v) == 0.0);

  const oracle::Resolution res;
  CHECK(oracle::d_h_infty_bruteforce(tri(0, 1, 1), tri(1, 1, 1), res) == doctest::Approx(1.0));
  CHECK(d_h_infty(tri(0, 1, 1), tri(1, 1, 1)) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(oracle::d_h_infty_bruteforce(tri(0, 2, 2), tri(0, 1, 1), res) ==
        doctest::Approx(1.0).epsilon(2e-3));
  CHECK(d_h_infty(tri(0, 2, 2), tri(0, 1, 1)) == 1.0);

  // Step mode never reaches the alpha = 0 knot.
  const FuzzyNumber s({{0.0, {-100, 100}}, {1.0, {0, 0}}}, LevelMode::left_continuous_step);
  CHECK(d_h_infty(s, FuzzyNumber::crisp(0, LevelMode::left_continuous_step)) == 0.0);
}

TEST_CASE("d_h_infty against the dense-grid oracle") {
  Gen gen(9);
  const oracle::Resolution res;
  const double max_slope = 2.0;
  const double tol = 2 * res.alpha_step * (2 * max_slope);
  for (int i = 0; i < 300; ++i) {
    const auto u = gen.fuzzy(LevelMode::piecewise_linear, max_slope);
    const auto v = gen.fuzzy(LevelMode::piecewise_linear, max_slope);
    const double exact = d_h_infty(u, v);
    const double dense = oracle::d_h_infty_bruteforce(u, v, res);
    CHECK(dense <= exact + 1e-12);
    CHECK(exact - dense <= tol);
  }
  for (int i = 0; i < 300; ++i) {
    const auto u = gen.fuzzy(LevelMode::left_continuous_step);
    const auto v = gen.fuzzy(gen.coin() ? LevelMode::left_continuous_step : LevelMode::piecewise_linear);
    const double exact = d_h_infty(u, v);
    const double dense = oracle::d_h_infty_bruteforce(u, v, res);
    CHECK(dense <= exact + 1e-12);
    if (v.mode() == LevelMode::left_continuous_step && std::min(min_cell(u), min_cell(v)) > 2 * res.alpha_step) {
      // Every merged cell contains a grid point and both level maps are constant there.
      CHECK(dense == exact);
    }
  }
}

TEST_CASE("d_h_infty dominates every level distance") {
  Gen gen(10);
  for (int i = 0; i < 500; ++i) {
    const auto mode_u = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto mode_v = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto u = gen.fuzzy(mode_u);
    const auto v = gen.fuzzy(mode_v);
    const double d = d_h_infty(u, v);
    CHECK(d == d_h_infty(v, u));
    for (int j = 0; j < 50; ++j) {
      const double a = gen.uniform(1e-12, 1.0);
      CHECK(hausdorff(level_set(u, a), level_set(v, a)) <= d);
    }
  }
}

TEST_CASE("levelwise arithmetic") {
  const auto sum = add(tri(1, 0.5, 2), tri(-3, 1, 0.25));
  CHECK(d_h_infty(sum, tri(-2, 1.5, 2.25)) <= 1e-15);
  CHECK(add(tri(1.5, 2, 3), tri(0, 0, 0)) == tri(1.5, 2, 3));
  CHECK_THROWS_AS(add(tri(0, 1, 1), with_mode(tri(0, 1, 1), LevelMode::left_continuous_step)),
                  std::invalid_argument);

  // Merged grids: both operands are sampled at every knot of either.
  const FuzzyNumber coarse({{0.0, {-1, 1}}, {1.0, {0, 0}}}, LevelMode::piecewise_linear);
  const FuzzyNumber fine({{0.0, {0, 2}}, {0.25, {0.5, 1.5}}, {1.0, {1, 1}}}, LevelMode::piecewise_linear);
  const auto merged = add(coarse, fine);
  REQUIRE(merged.size() == 3);
  CHECK(merged.knots()[1].level == Interval(-0.25, 2.25));

  // scale(1/n, .) summed n times matches the running mean.
  Gen gen(11);
  std::vector<FuzzyNumber> terms;
  for (int i = 0; i < 17; ++i) terms.push_back(tri(gen.uniform(-2, 2), gen.uniform(0, 2), gen.uniform(0, 2)));
  MinkowskiSum acc;
  for (const auto& t : terms) acc.add(t);
  FuzzyNumber folded = scale(1.0 / 17, terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) folded = add(folded, scale(1.0 / 17, terms[i]));
  CHECK(d_h_infty(folded, acc.mean()) <= 1e-14);
}

TEST_CASE("MinkowskiSum matches a fold of add") {
  Gen gen(12);
  for (int i = 0; i < 50; ++i) {
    const auto mode = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    MinkowskiSum acc;
    std::optional<FuzzyNumber> folded;
    for (int k = 0; k < 5; ++k) {
      const auto v = gen.fuzzy(mode);
      acc.add(v);
      folded = folded ? add(*folded, v) : v;
    }
    CHECK(acc.sum() == *folded);
    CHECK(acc.count() == 5);
  }
  CHECK_THROWS_AS(MinkowskiSum{}.sum(), std::logic_error);
}

TEST_CASE("metric is compatible with the arithmetic") {
  Gen gen(13);
  for (int i = 0; i < 300; ++i) {
    const auto mode = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto u = gen.fuzzy(mode);
    const auto v = gen.fuzzy(mode);
    const auto w = gen.fuzzy(mode);
    const double d = d_h_infty(u, v);
    CHECK(d_h_infty(add(u, w), add(v, w)) == doctest::Approx(d).epsilon(1e-12).scale(10));
    const double lambda = gen.uniform(-3, 3);
    CHECK(d_h_infty(scale(lambda, u), scale(lambda, v)) ==
          doctest::Approx(std::abs(lambda) * d).epsilon(1e-12).scale(10));
  }
}

TEST_CASE("norm_f") {
  CHECK(norm_f(FuzzyNumber::crisp(0)) == 0.0);
  CHECK(norm_f(tri(0, 1, 1)) == 1.0);
  CHECK(norm_f(tri(3, 1, 1)) == 4.0);

  Gen gen(14);
  for (int i = 0; i < 300; ++i) {
    const auto mode = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto v = gen.fuzzy(mode);
    CHECK(norm_f(v) == d_h_infty(v, FuzzyNumber::crisp(0, mode)));
  }
}

TEST_CASE("epsilon_partition") {
  CHECK(epsilon_partition(tri(2, 0, 0), 0.01).cuts().size() == 2);
  CHECK(epsilon_partition(FuzzyNumber::crisp(5), 1e-9).cuts().size() == 2);

  const auto v = tri(0, 1, 1);
  const AlphaPartition halves({0.0, 0.5, 1.0});
  CHECK(partition_drift(v, halves) == doctest::Approx(0.5));
  CHECK(partition_drift(v, halves) < 0.6);

  const auto greedy = epsilon_partition(v, 0.6);
  CHECK(partition_drift(v, greedy) < 0.6);
  CHECK(greedy.cells() == 2);

  // A single pwl cell steeper than eps needs interior cuts.
  const FuzzyNumber steep({{0.0, {-10, 10}}, {1.0, {0, 0}}}, LevelMode::piecewise_linear);
  const auto fine = epsilon_partition(steep, 1.0);
  CHECK(partition_drift(steep, fine) < 1.0);
  CHECK(fine.cells() >= 10);

  Gen gen(15);
  for (int i = 0; i < 500; ++i) {
    const auto mode = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto w = gen.fuzzy(mode, 4.0);
    const double eps = gen.uniform(0.01, 2.0);
    const auto p = epsilon_partition(w, eps);
    CHECK(partition_drift(w, p) < eps);
    if (mode == LevelMode::left_continuous_step) CHECK(p.cells() <= w.size() - 1);
  }

  CHECK_THROWS_AS(epsilon_partition(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaPartition({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(AlphaPartition({0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("partition decomposition bounds the uniform distance") {
  Gen gen(16);
  std::size_t violations = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto mode = gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step;
    const auto u = gen.fuzzy(mode);
    const auto w = gen.fuzzy(mode);
    const auto p = epsilon_partition(w, gen.uniform(0.05, 1.0));
    const auto t = decomposition_terms(u, w, p);
    CHECK(t.drift == partition_drift(w, p));
    if (!(d_h_infty(u, w) <= t.bound())) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("check_valid") {
  CHECK(check_valid(tri(0, 1, 2)).ok());

  const std::vector<AlphaKnot> widening{{0.0, {0, 1}}, {0.5, {0, 2}}, {1.0, {0, 3}}};
  const auto bad = check_valid(widening);
  CHECK(bad.issue == ValidityReport::Issue::not_nested);
  CHECK(bad.index == 1);

  const std::vector<AlphaKnot> core_only{{1.0, {0, 0}}};
  CHECK(check_valid(core_only).issue == ValidityReport::Issue::missing_zero_knot);

  const std::vector<AlphaKnot> no_core{{0.0, {0, 1}}, {0.5, {0, 1}}};
  CHECK(check_valid(no_core).issue == ValidityReport::Issue::missing_one_knot);

  const std::vector<AlphaKnot> unordered{{0.0, {0, 1}}, {0.6, {0, 1}}, {0.4, {0, 1}}, {1.0, {0, 1}}};
  const auto r = check_valid(unordered);
  CHECK(r.issue == ValidityReport::Issue::alphas_not_increasing);
  CHECK(r.index == 2);

  CHECK(check_valid(std::vector<AlphaKnot>{}).issue == ValidityReport::Issue::empty);
  CHECK_THROWS_AS(FuzzyNumber(widening, LevelMode::piecewise_linear), std::invalid_argument);
}

TEST_CASE("fuzzy-number literal") {
  const auto v = parse_literal("mode: step\n# alpha lo hi\n0 0 4\n0.5 1 3\n\n1 2 2\n");
  CHECK(v == knots3(LevelMode::left_continuous_step));

  Gen gen(17);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.fuzzy(gen.coin() ? LevelMode::piecewise_linear : LevelMode::left_continuous_step);
    CHECK(parse_literal(to_literal(f)) == f);
  }

  auto error_line = [](const char* text) -> std::size_t {
    try {
      parse_literal(text);
    } catch (const LiteralError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("0 0 1\n") == 1);
  CHECK(error_line("mode: cubic\n") == 1);
  CHECK(error_line("mode: pwl\n0 0 1\n0.5 1 x\n") == 3);
  CHECK(error_line("mode: pwl\n0 0 1\n0.5 2 1\n1 1 1\n") == 3);
  CHECK(error_line("mode: pwl\n0 0 1\n\n0.5 -1 1\n1 0 0\n") == 4);
  CHECK(error_line("mode: pwl\n0 0 1\n0.5 0 1 7\n") == 3);
}
