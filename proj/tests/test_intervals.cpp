#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fuzzylln/interval.hpp"
#include "fuzzylln/oracle.hpp"
#include "generators.hpp"

using namespace fuzzylln;
using fuzzylln::testing::Gen;

namespace {

std::vector<double> grid_points(const Interval& a, double step) {
  std::vector<double> pts;
  for (double x = a.lo(); x < a.hi(); x += step) pts.push_back(x);
  pts.push_back(a.hi());
  return pts;
}

// Hull of {f(a, b)} over grid points of A and B.
template <class F>
Interval grid_image(const Interval& a, const Interval& b, F f, double step = 1e-2) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : grid_points(a, step)) {
    for (double y : grid_points(b, step)) {
      lo = std::min(lo, f(x, y));
      hi = std::max(hi, f(x, y));
    }
  }
  return Interval(lo, hi);
}

}  // namespace

TEST_CASE("interval construction") {
  CHECK_NOTHROW(Interval(1.0, 1.0));
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(Interval(NAN, 0.0), std::invalid_argument);
  CHECK(Interval() == Interval::point(0.0));
}

TEST_CASE("minkowski_add") {
  CHECK(minkowski_add({0, 1}, {2, 5}) == Interval(2, 6));
  CHECK(minkowski_add(Interval::point(0), {-3.5, 7}) == Interval(-3.5, 7));

  const Interval expected = grid_image({-1, 2}, {-3, -1}, [](double a, double b) { return a + b; });
  CHECK(expected.lo() == doctest::Approx(-4).epsilon(1e-12));
  CHECK(expected.hi() == doctest::Approx(1).epsilon(1e-12));
  CHECK(minkowski_add({-1, 2}, {-3, -1}) == Interval(-4, 1));
}

TEST_CASE("scale") {
  const Interval a(-2.5, 4);
  CHECK(scale(1.0, a) == a);
  CHECK(scale(0.0, {-2, 3}) == Interval(0, 0));

  const Interval image = grid_image({1, 4}, Interval::point(0),
                                    [](double x, double) { return -2.0 * x; });
  CHECK(image.lo() == doctest::Approx(-8));
  CHECK(image.hi() == doctest::Approx(-2));
  CHECK(scale(-2.0, {1, 4}) == Interval(-8, -2));
}

TEST_CASE("hausdorff") {
  const Interval a(-1.25, 3);
  CHECK(hausdorff(a, a) == 0.0);

  const oracle::Resolution res{1e-3, 1e-3, 0};
  CHECK(oracle::hausdorff_bruteforce({0, 1}, {2, 5}, res) == doctest::Approx(4).epsilon(2e-3));
  CHECK(hausdorff({0, 1}, {2, 5}) == 4.0);
  CHECK(oracle::hausdorff_bruteforce({0, 10}, {4, 6}, res) == doctest::Approx(4).epsilon(2e-3));
  CHECK(hausdorff({0, 10}, {4, 6}) == 4.0);
}

TEST_CASE("dist_point") {
  CHECK(dist_point(0.5, {0, 1}) == 0.0);
  CHECK(dist_point(5, {0, 1}) == 4.0);

  double best = INFINITY;
  for (double a : grid_points({-1, 2}, 1e-3)) best = std::min(best, std::abs(-3.0 - a));
  CHECK(best == doctest::Approx(2.0));
  CHECK(dist_point(-3, {-1, 2}) == 2.0);
}

TEST_CASE("norm_k") {
  CHECK(norm_k(Interval::point(0)) == 0.0);
  CHECK(oracle::hausdorff_bruteforce(Interval::point(0), {-2, 3}) == doctest::Approx(3));
  CHECK(norm_k({-2, 3}) == 3.0);
  double best = 0;
  for (double a : grid_points({1, 4}, 1e-3)) best = std::max(best, std::abs(a));
  CHECK(best == 4.0);
  CHECK(norm_k({1, 4}) == 4.0);
}

TEST_CASE("support") {
  CHECK(support(Direction::plus, {-7, 2.5}) == 2.5);
  CHECK(support(Direction::minus, {-2, 3}) == 2.0);
  double best = -INFINITY;
  for (double a : grid_points({1, 4}, 1e-3)) best = std::max(best, -a);
  CHECK(best == -1.0);
  CHECK(support(Direction::minus, {1, 4}) == -1.0);
}

TEST_CASE("metric axioms on random triples") {
  Gen gen(101);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = gen.interval();
    const Interval b = gen.coin() ? gen.interval() : a;
    const Interval c = gen.interval();
    const double ab = hausdorff(a, b);
    CHECK(ab == hausdorff(b, a));
    CHECK(ab >= 0.0);
    CHECK((ab == 0.0) == (a == b));
    // Exact real triangle inequality; allow one rounding of the sum.
    CHECK(hausdorff(a, c) <= (ab + hausdorff(b, c)) * (1 + 1e-15));
  }
}

TEST_CASE("distance-function kernel reproduces hausdorff") {
  Gen gen(202);
  for (int i = 0; i < 200; ++i) {
    const Interval a = gen.interval();
    const Interval b = gen.interval();
    const double d = hausdorff(a, b);
    const double step = 1e-3;
    double sup = 0.0;
    for (double x = -25.0; x <= 25.0; x += step) {
      const double gap = std::abs(dist_point(x, a) - dist_point(x, b));
      REQUIRE(gap <= d + 1e-12);
      sup = std::max(sup, gap);
    }
    CHECK(sup >= d - 2 * step);
  }
}

TEST_CASE("nested-triple inequality, sum and max forms") {
  Gen gen(303);
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Interval a2 = gen.interval();
    const Interval b2 = gen.interval();
    const Interval a1 = gen.shrink(a2), a3 = gen.widen(a2);
    const Interval b1 = gen.shrink(b2), b3 = gen.widen(b2);
    REQUIRE((a3.contains(a2) && a2.contains(a1) && b3.contains(b2) && b2.contains(b1)));
    const double lhs = hausdorff(a2, b2);
    const double x = hausdorff(a1, b3);
    const double y = hausdorff(a3, b1);
    if (!(lhs <= x + y) || !(lhs <= std::max(x, y))) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("support functions determine the metric and the arithmetic") {
  Gen gen(404);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = gen.interval();
    const Interval b = gen.interval();
    double via_support = 0.0;
    for (Direction d : kDirections) {
      via_support = std::max(via_support, std::abs(support(d, a) - support(d, b)));
    }
    CHECK(hausdorff(a, b) == via_support);

    const double lambda = gen.uniform(0.0, 5.0);
    for (Direction d : kDirections) {
      CHECK(support(d, minkowski_add(a, b)) == support(d, a) + support(d, b));
      CHECK(support(d, scale(lambda, a)) == lambda * support(d, a));
    }
  }
}
