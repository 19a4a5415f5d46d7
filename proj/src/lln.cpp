#include "fuzzylln/lln.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fuzzylln/random.hpp"
#include "fuzzylln/text.hpp"

namespace fuzzylln {

namespace {

void require_n(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

struct Replication {
  double distance = 0.0;
  // One flag per (knot, direction): scalar support mean deviates by more than eps.
  std::vector<unsigned char> scalar_exceeds;
};

// Sample mean of one outcome against a precomputed expectation mean.
Replication replicate(const ModelSpec& model, std::size_t n, OmegaSeed omega,
                      const FuzzyNumber& expected, double eps, bool scalars) {
  const FuzzyNumber mean = sample_mean(model, n, omega);
  Replication rep;
  rep.distance = d_h_infty(mean, expected);
  if (scalars) {
    rep.scalar_exceeds.resize(mean.size() * 2);
    for (std::size_t j = 0; j < mean.size(); ++j) {
      for (std::size_t d = 0; d < 2; ++d) {
        const Direction dir = kDirections[d];
        const double dev = support(dir, mean.knots()[j].level) - support(dir, expected.knots()[j].level);
        rep.scalar_exceeds[j * 2 + d] = std::abs(dev) > eps;
      }
    }
  }
  return rep;
}

std::vector<Replication> replicate_all(const ModelSpec& model, std::size_t n, double eps,
                                       std::size_t replications, std::uint64_t master_seed,
                                       unsigned threads, bool scalars) {
  const FuzzyNumber expected = expectation_mean(model, n);
  std::vector<Replication> reps(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    reps[r] = replicate(model, n, derive_omega(master_seed, r), expected, eps, scalars);
  });
  return reps;
}

TailEstimate summarize(const std::vector<Replication>& reps, double eps) {
  TailEstimate t;
  t.replications = reps.size();
  double total = 0.0;
  for (const auto& r : reps) {
    if (r.distance > eps) ++t.exceedances;
    total += r.distance;
  }
  const double count = static_cast<double>(reps.size());
  t.p_hat = static_cast<double>(t.exceedances) / count;
  t.ci = wilson_interval(t.exceedances, reps.size());
  t.mean_distance = total / count;
  return t;
}

// Mean of the Dirichlet kernel, (1/n) sum_{k=1}^{n} cos(kU).
double cosine_mean(std::size_t n, double u) {
  const double nd = static_cast<double>(n);
  const double s = std::sin(0.5 * u);
  if (std::abs(s) < 1e-300) return 1.0;
  return std::sin(0.5 * nd * u) * std::cos(0.5 * (nd + 1.0) * u) / (s * nd);
}

std::string optional_cell(const std::optional<double>& x) {
  return x ? text::format_double(*x) : std::string();
}

}  // namespace

FuzzyNumber sample_mean(const ModelSpec& model, std::size_t n, OmegaSeed omega) {
  require_n(n);
  const OmegaDraw draw = realize(model, omega);
  MinkowskiSum acc;
  for (std::size_t k = 1; k <= n; ++k) acc.add(sample(model, k, draw));
  return acc.mean();
}

FuzzyNumber expectation_mean(const ModelSpec& model, std::size_t n) {
  require_n(n);
  MinkowskiSum acc;
  for (std::size_t k = 1; k <= n; ++k) acc.add(analytic_expectation(model, k));
  return acc.mean();
}

TrialResult run_trial(const ModelSpec& model, std::size_t n, OmegaSeed omega) {
  return {n, omega, d_h_infty(sample_mean(model, n, omega), expectation_mean(model, n))};
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval needs trials > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always brackets p despite rounding.
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

TailEstimate tail_probability(const ModelSpec& model, std::size_t n, double eps,
                              std::size_t replications, std::uint64_t master_seed,
                              unsigned threads) {
  require_n(n);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  return summarize(replicate_all(model, n, eps, replications, master_seed, threads, false), eps);
}

double chebyshev_bound(const ModelSpec& model, std::size_t n, double eps) {
  double worst = 0.0;
  for (double a : model.grid) {
    for (Direction dir : kDirections) worst = std::max(worst, variance_condition(model, n, a, dir));
  }
  return worst / (eps * eps);
}

double exact_tail_cosine(std::size_t n, double eps, std::size_t quadrature_points) {
  require_n(n);
  if (quadrature_points < 2) throw std::invalid_argument("need at least two quadrature cells");
  // D(U) = D(2 pi - U), so measuring over (0, pi) suffices.
  const double pi = std::numbers::pi;
  auto excess = [&](double u) { return std::abs(cosine_mean(n, u)) - eps; };
  const double h = pi / static_cast<double>(quadrature_points);
  double measure = 0.0;
  double a = 0.0;
  double fa = excess(a);
  for (std::size_t i = 1; i <= quadrature_points; ++i) {
    const double b = i == quadrature_points ? pi : static_cast<double>(i) * h;
    const double fb = excess(b);
    const bool in_a = fa > 0.0;
    const bool in_b = fb > 0.0;
    if (in_a && in_b) {
      measure += b - a;
    } else if (in_a != in_b) {
      double lo = a;
      double hi = b;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((excess(mid) > 0.0) == in_a) lo = mid;
        else hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      measure += in_a ? root - a : b - root;
    }
    a = b;
    fa = fb;
  }
  return measure / pi;
}

StudyResult convergence_study(const ModelSpec& model, const StudyOptions& options,
                              std::vector<EnvelopeCheck>* envelope) {
  if (options.schedule.empty()) throw std::invalid_argument("schedule is empty");
  for (std::size_t i = 0; i < options.schedule.size(); ++i) {
    require_n(options.schedule[i]);
    if (i > 0 && !(options.schedule[i - 1] < options.schedule[i])) {
      throw std::invalid_argument("schedule must increase strictly");
    }
  }
  if (!(options.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (options.replications < 1) throw std::invalid_argument("replications must be at least 1");

  const bool with_oracle = model.kind == ModelKind::cosine_center && model.noise > 0.0;
  const bool scalars = envelope != nullptr;
  if (envelope) envelope->clear();

  StudyResult result;
  for (std::size_t n : options.schedule) {
    const auto reps = replicate_all(model, n, options.eps, options.replications,
                                    options.master_seed, options.threads, scalars);
    const TailEstimate tail = summarize(reps, options.eps);
    StudyRow row;
    row.n = n;
    row.eps = options.eps;
    row.replications = options.replications;
    row.p_hat = tail.p_hat;
    row.ci_lo = tail.ci.lo;
    row.ci_hi = tail.ci.hi;
    row.mean_distance = tail.mean_distance;
    row.chebyshev_bound = chebyshev_bound(model, n, options.eps);
    if (with_oracle) {
      row.oracle_tail = exact_tail_cosine(n, options.eps / model.noise, options.quadrature_points);
    }
    result.rows.push_back(row);

    if (scalars) {
      EnvelopeCheck worst;
      double worst_slack = INFINITY;
      for (std::size_t j = 0; j < model.grid.size(); ++j) {
        for (std::size_t d = 0; d < 2; ++d) {
          std::size_t hits = 0;
          for (const auto& r : reps) hits += r.scalar_exceeds[j * 2 + d];
          EnvelopeCheck c;
          c.n = n;
          c.alpha = model.grid[j];
          c.dir = kDirections[d];
          c.p_hat = static_cast<double>(hits) / static_cast<double>(reps.size());
          c.half_width = wilson_interval(hits, reps.size()).half_width();
          c.bound = variance_condition(model, n, c.alpha, c.dir) / (options.eps * options.eps);
          const double slack = c.bound - (c.p_hat - c.half_width);
          if (slack < worst_slack) {
            worst_slack = slack;
            worst = c;
          }
        }
      }
      envelope->push_back(worst);
    }
  }
  return result;
}

bool converged(const StudyResult& result, const ConvergenceCriterion& criterion) {
  if (result.rows.size() < 2) return false;
  const StudyRow& first = result.rows.front();
  const StudyRow& last = result.rows.back();
  return last.p_hat < criterion.target && last.p_hat < first.p_hat / criterion.decrease_factor &&
         last.ci_hi < first.ci_lo;
}

DecompositionReport decomposition_diagnostic(const ModelSpec& model, std::size_t n,
                                             OmegaSeed omega, double eps) {
  const FuzzyNumber u = sample_mean(model, n, omega);
  const FuzzyNumber w = expectation_mean(model, n);
  const AlphaPartition partition = epsilon_partition(w, eps);
  DecompositionReport report;
  report.n = n;
  report.omega = omega;
  report.eps = eps;
  report.cells = partition.cells();
  report.terms = decomposition_terms(u, w, partition);
  report.distance = d_h_infty(u, w);
  return report;
}

void write_study_csv(std::ostream& out, const StudyResult& result) {
  out << "n,eps,replications,p_hat,ci_lo,ci_hi,mean_distance,chebyshev_bound,oracle_tail\n";
  for (const auto& r : result.rows) {
    out << r.n << ',' << text::format_double(r.eps) << ',' << r.replications << ','
        << text::format_double(r.p_hat) << ',' << text::format_double(r.ci_lo) << ','
        << text::format_double(r.ci_hi) << ',' << text::format_double(r.mean_distance) << ','
        << text::format_double(r.chebyshev_bound) << ',' << optional_cell(r.oracle_tail) << '\n';
  }
}

StudyResult read_study_csv(std::istream& in) {
  StudyResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || text::trim(line).empty()) continue;
    auto f = text::split(line, ',');
    if (f.size() != 9) {
      throw std::invalid_argument("study csv line " + std::to_string(line_no) + ": expected 9 fields");
    }
    StudyRow r;
    r.n = text::parse_uint(f[0]);
    r.eps = text::parse_double(f[1]);
    r.replications = text::parse_uint(f[2]);
    r.p_hat = text::parse_double(f[3]);
    r.ci_lo = text::parse_double(f[4]);
    r.ci_hi = text::parse_double(f[5]);
    r.mean_distance = text::parse_double(f[6]);
    r.chebyshev_bound = text::parse_double(f[7]);
    if (!f[8].empty()) r.oracle_tail = text::parse_double(f[8]);
    result.rows.push_back(r);
  }
  return result;
}

void write_plot_data(std::ostream& out, const StudyResult& result) {
  out << "# n p_hat chebyshev_bound\n";
  for (const auto& r : result.rows) {
    out << r.n << ' ' << text::format_double(r.p_hat) << ' '
        << text::format_double(r.chebyshev_bound) << '\n';
  }
}

}  // namespace fuzzylln
