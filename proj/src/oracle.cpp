#include "fuzzylln/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fuzzylln::oracle {

namespace {

std::vector<double> discretize(const Interval& a, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("discretization step must be positive");
  std::vector<double> pts;
  const auto count = static_cast<std::size_t>(std::floor(a.width() / step));
  pts.reserve(count + 2);
  for (std::size_t i = 0; i <= count; ++i) {
    const double x = a.lo() + static_cast<double>(i) * step;
    if (x < a.hi()) pts.push_back(x);
  }
  pts.push_back(a.hi());
  return pts;
}

// sup over x in xs of inf over y in ys of |x - y|; ys sorted.
double directed(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sup = 0.0;
  for (double x : xs) {
    auto it = std::lower_bound(ys.begin(), ys.end(), x);
    double inf = std::numeric_limits<double>::infinity();
    if (it != ys.end()) inf = std::min(inf, std::abs(*it - x));
    if (it != ys.begin()) inf = std::min(inf, std::abs(*std::prev(it) - x));
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace

double hausdorff_bruteforce(const Interval& a, const Interval& b, const Resolution& res) {
  const auto xs = discretize(a, res.spatial_step);
  const auto ys = discretize(b, res.spatial_step);
  return std::max(directed(xs, ys), directed(ys, xs));
}

double d_h_infty_bruteforce(const FuzzyNumber& u, const FuzzyNumber& v, const Resolution& res) {
  if (!(res.alpha_step > 0.0)) throw std::invalid_argument("alpha_step must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / res.alpha_step));
  double sup = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double a = std::min(1.0, static_cast<double>(i) * res.alpha_step);
    const Interval ua = level_set(u, a);
    const Interval va = level_set(v, a);
    // Interval Hausdorff distance as the larger endpoint gap.
    const double gap_lo = std::abs(ua.lo() - va.lo());
    const double gap_hi = std::abs(ua.hi() - va.hi());
    sup = std::max({sup, gap_lo, gap_hi});
  }
  return sup;
}

Interval aumann_bruteforce(std::span<const Interval> samples, double selection_step) {
  if (samples.empty()) throw std::invalid_argument("aumann_bruteforce needs samples");
  if (!(selection_step > 0.0)) throw std::invalid_argument("selection_step must be positive");

  // Achievable partial sums, bucketed at selection_step; each bucket keeps
  // its smallest and largest exact sum so the extremes are never rounded away.
  using Bucket = std::pair<double, double>;
  constexpr double kEmpty = std::numeric_limits<double>::quiet_NaN();
  std::vector<Bucket> reach{{0.0, 0.0}};
  double base = 0.0;
  double width = 0.0;
  for (const Interval& s : samples) {
    const auto grid = discretize(s, selection_step);
    const double next_base = base + s.lo();
    width += s.width();
    const auto buckets = static_cast<std::size_t>(std::ceil(width / selection_step)) + 2;
    std::vector<Bucket> next(buckets, {kEmpty, kEmpty});
    for (const auto& [lo, hi] : reach) {
      if (std::isnan(lo)) continue;
      for (double partial : {lo, hi}) {
        for (double x : grid) {
          const double total = partial + x;
          auto idx = static_cast<long>(std::floor((total - next_base) / selection_step + 0.5));
          idx = std::clamp<long>(idx, 0, static_cast<long>(buckets) - 1);
          auto& b = next[static_cast<std::size_t>(idx)];
          if (std::isnan(b.first)) b = {total, total};
          else b = {std::min(b.first, total), std::max(b.second, total)};
        }
      }
    }
    reach = std::move(next);
    base = next_base;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : reach) {
    if (std::isnan(a)) continue;
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  const double count = static_cast<double>(samples.size());
  return Interval(lo / count, hi / count);
}

double cov_bruteforce(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("cov_bruteforce: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("cov_bruteforce: need at least two samples");
  const std::size_t n = xs.size();
  double ex = 0.0;
  double ey = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ex += xs[i] - xs[0];
    ey += ys[i] - ys[0];
  }
  ex /= static_cast<double>(n);
  ey /= static_cast<double>(n);
  double exy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = (xs[i] - xs[0]) - ex;
    const double dy = (ys[i] - ys[0]) - ey;
    exy += dx * dy;
  }
  return exy / (static_cast<double>(n) - 1.0);
}

}  // namespace fuzzylln::oracle
