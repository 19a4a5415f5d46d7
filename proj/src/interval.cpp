#include "fuzzylln/interval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fuzzylln {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("interval endpoints must be finite");
  }
  if (lo > hi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "interval lower endpoint " << lo << " exceeds upper endpoint " << hi;
    throw std::invalid_argument(msg.str());
  }
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
  return os << '[' << a.lo() << ", " << a.hi() << ']';
}

Interval minkowski_add(const Interval& a, const Interval& b) {
  // Endpoint sums keep lo <= hi because rounding is monotone.
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval scale(double lambda, const Interval& a) {
  if (lambda >= 0.0) {
    return Interval(lambda * a.lo(), lambda * a.hi());
  }
  return Interval(lambda * a.hi(), lambda * a.lo());
}

double hausdorff(const Interval& a, const Interval& b) noexcept {
  return std::max(std::abs(a.lo() - b.lo()), std::abs(a.hi() - b.hi()));
}

double dist_point(double x, const Interval& a) noexcept {
  if (x < a.lo()) return a.lo() - x;
  if (x > a.hi()) return x - a.hi();
  return 0.0;
}

double norm_k(const Interval& a) noexcept {
  return std::max(std::abs(a.lo()), std::abs(a.hi()));
}

double support(Direction dir, const Interval& a) noexcept {
  return dir == Direction::plus ? a.hi() : -a.lo();
}

}  // namespace fuzzylln
