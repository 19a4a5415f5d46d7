#pragma once

// Brute-force reference computations for tests and acceptance runs.
// Slow on purpose; nothing here calls the closed forms it is used to check.

#include <cstddef>
#include <span>

#include "fuzzylln/fuzzy_number.hpp"
#include "fuzzylln/interval.hpp"

namespace fuzzylln::oracle {

struct Resolution {
  double spatial_step = 1e-3;
  double alpha_step = 1e-3;
  std::size_t draws = 0;
};

/// max of the two directed sup-inf distances between the sets discretized at
/// spatial_step (endpoints always included). Error at most 2 * spatial_step.
double hausdorff_bruteforce(const Interval& a, const Interval& b, const Resolution& res = {});

/// max over alpha = alpha_step, 2 alpha_step, ..., 1 of the level distance.
/// Never exceeds the true supremum.
double d_h_infty_bruteforce(const FuzzyNumber& u, const FuzzyNumber& v,
                            const Resolution& res = {});

/// Hull of (1/N) sum_i f_i over all selections f_i from a selection_step grid
/// of the i-th interval (uniform measure on the listed outcomes).
Interval aumann_bruteforce(std::span<const Interval> samples, double selection_step = 1e-2);

/// Covariance with the (n - 1) denominator, computed from data shifted by the
/// first observation. Throws std::invalid_argument on length mismatch or n < 2.
double cov_bruteforce(std::span<const double> xs, std::span<const double> ys);

}  // namespace fuzzylln::oracle
