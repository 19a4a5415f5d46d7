#pragma once

#include <iosfwd>

namespace fuzzylln {

/// Nonempty compact convex subset of the real line, stored as its endpoints.
///
/// Degenerate intervals [x, x] are ordinary values and model singletons.
/// Equality is exact endpoint equality; compare approximately through
/// hausdorff() with an explicit tolerance.
class Interval {
public:
  /// The singleton {0}.
  constexpr Interval() noexcept = default;

  /// Throws std::invalid_argument unless both endpoints are finite and lo <= hi.
  Interval(double lo, double hi);

  static Interval point(double x) { return Interval(x, x); }

  constexpr double lo() const noexcept { return lo_; }
  constexpr double hi() const noexcept { return hi_; }
  constexpr double width() const noexcept { return hi_ - lo_; }

  constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  constexpr bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& a);

/// Unit "sphere" of the dual of R: the two functionals x -> x and x -> -x.
enum class Direction : int { minus = -1, plus = +1 };

inline constexpr Direction kDirections[] = {Direction::minus, Direction::plus};

constexpr double sign(Direction d) noexcept { return d == Direction::plus ? 1.0 : -1.0; }

/// Minkowski sum {a + b}.
Interval minkowski_add(const Interval& a, const Interval& b);

/// Minkowski scalar multiple {lambda * a}; negative factors swap the endpoints.
Interval scale(double lambda, const Interval& a);

/// Hausdorff distance. For intervals this is the larger endpoint gap.
double hausdorff(const Interval& a, const Interval& b) noexcept;

/// inf over a in A of |x - a|.
double dist_point(double x, const Interval& a) noexcept;

/// Distance to {0}, i.e. max(|lo|, |hi|).
double norm_k(const Interval& a) noexcept;

/// sup over a in A of dir * a: hi for +1, -lo for -1.
double support(Direction dir, const Interval& a) noexcept;

}  // namespace fuzzylln
