#include "fuzzylln/models.hpp"

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

void require_index(std::size_t k) {
  if (k < 1) throw std::invalid_argument("sequence indices start at 1");
}

Interval read_level(const FuzzyNumber& v, double alpha, LevelKind level) {
  return level == LevelKind::at ? level_set(v, alpha) : level_plus(v, alpha);
}

// Running sums for the shifted two-pass covariance. Shifting by the first
// observation makes constant streams produce exactly zero.
struct CovSums {
  double sum_p = 0.0;
  double sum_pp = 0.0;

  void add(double dx, double dy) {
    const double p = dx * dy;
    sum_p += p;
    sum_pp += p * p;
  }

  CovEstimate finish(std::size_t n) const {
    const double nn = static_cast<double>(n);
    CovEstimate est;
    est.cov = sum_p / (nn - 1.0);
    const double var_p = (sum_pp - sum_p * sum_p / nn) / (nn - 1.0);
    est.std_err = std::sqrt(std::max(0.0, var_p) / nn);
    return est;
  }
};

std::string dir_token(Direction d) { return d == Direction::plus ? "+1" : "-1"; }

Direction parse_dir(std::string_view s) {
  if (s == "+1" || s == "1") return Direction::plus;
  if (s == "-1") return Direction::minus;
  throw std::invalid_argument("bad direction '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::iid_triangular: return "iid-triangular";
    case ModelKind::cosine_center: return "cosine-center";
    case ModelKind::cosine_center_spread: return "cosine-center-spread";
    case ModelKind::shared_shift_correlated: return "shared-shift-correlated";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (auto kind : {ModelKind::iid_triangular, ModelKind::cosine_center,
                    ModelKind::cosine_center_spread, ModelKind::shared_shift_correlated}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(center)) throw std::invalid_argument("model center must be finite");
  if (!(left_spread >= 0.0 && right_spread >= 0.0 && base_spread >= 0.0) ||
      !finite(left_spread) || !finite(right_spread) || !finite(base_spread)) {
    throw std::invalid_argument("model spreads must be finite and nonnegative");
  }
  if (!(modulation >= 0.0 && modulation < 1.0)) {
    throw std::invalid_argument("modulation depth must lie in [0, 1)");
  }
  if (!(noise >= 0.0) || !finite(noise)) {
    throw std::invalid_argument("noise scale must be finite and nonnegative");
  }
  // Building one member checks the grid.
  (void)make_triangular(0.0, 0.0, 0.0, grid);
}

OmegaSeed derive_omega(std::uint64_t master, std::uint64_t index) noexcept {
  return OmegaSeed{derive_seed(master, index)};
}

OmegaDraw realize(const ModelSpec& model, OmegaSeed omega) {
  OmegaDraw draw{omega, 0.0, 0.0};
  Engine engine = make_engine(omega.value);
  switch (model.kind) {
    case ModelKind::cosine_center:
    case ModelKind::cosine_center_spread:
      draw.phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(engine);
      break;
    case ModelKind::shared_shift_correlated:
      draw.shift = std::normal_distribution<double>(0.0, 1.0)(engine);
      break;
    case ModelKind::iid_triangular:
      break;  // drawn per index in sample()
  }
  return draw;
}

FuzzyNumber sample(const ModelSpec& model, std::size_t k, const OmegaDraw& draw) {
  require_index(k);
  const double kd = static_cast<double>(k);
  switch (model.kind) {
    case ModelKind::iid_triangular: {
      Engine engine = make_engine(derive_seed(draw.omega.value, k));
      const double z = std::normal_distribution<double>(0.0, 1.0)(engine);
      return make_triangular(model.center + model.noise * z, model.left_spread,
                             model.right_spread, model.grid);
    }
    case ModelKind::cosine_center:
      return make_triangular(model.center + model.noise * std::cos(kd * draw.phase),
                             model.left_spread, model.right_spread, model.grid);
    case ModelKind::cosine_center_spread: {
      const double w = model.base_spread * (1.0 + model.modulation * std::sin(kd * draw.phase));
      return make_triangular(model.center + model.noise * std::cos(kd * draw.phase), w, w,
                             model.grid);
    }
    case ModelKind::shared_shift_correlated:
      return make_triangular(model.center + model.noise * draw.shift, model.left_spread,
                             model.right_spread, model.grid);
  }
  throw std::invalid_argument("unknown model kind");
}

FuzzyNumber sample(const ModelSpec& model, std::size_t k, OmegaSeed omega) {
  return sample(model, k, realize(model, omega));
}

FuzzyNumber analytic_expectation(const ModelSpec& model, std::size_t k) {
  require_index(k);
  // Every random term (s Z, s Z_k, s cos kU, sin kU) has mean zero.
  if (model.kind == ModelKind::cosine_center_spread) {
    return make_triangular(model.center, model.base_spread, model.base_spread, model.grid);
  }
  return make_triangular(model.center, model.left_spread, model.right_spread, model.grid);
}

FuzzyNumber mc_expectation(const ModelSpec& model, std::size_t k, std::size_t n_draws,
                           std::uint64_t seed) {
  if (n_draws < 2) throw std::invalid_argument("mc_expectation needs at least two draws");
  MinkowskiSum acc;
  for (std::size_t i = 0; i < n_draws; ++i) acc.add(sample(model, k, derive_omega(seed, i)));
  return acc.mean();
}

double support_sample(const ModelSpec& model, std::size_t k, double alpha, Direction dir,
                      OmegaSeed omega, LevelKind level) {
  return support(dir, read_level(sample(model, k, omega), alpha, level));
}

std::vector<double> support_stream(const ModelSpec& model, std::size_t k, double alpha,
                                   Direction dir, LevelKind level, std::size_t n_draws,
                                   std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) {
    out.push_back(support_sample(model, k, alpha, dir, derive_omega(seed, i), level));
  }
  return out;
}

CovEstimate sample_covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("covariance streams differ in length");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("covariance needs at least two samples");
  const double x0 = xs[0];
  const double y0 = ys[0];
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i] - x0;
    sy += ys[i] - y0;
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  CovSums sums;
  for (std::size_t i = 0; i < n; ++i) sums.add((xs[i] - x0) - mx, (ys[i] - y0) - my);
  return sums.finish(n);
}

CovReport estimate_cov(const ModelSpec& model, std::size_t k, std::size_t m, double alpha,
                       Direction dir, std::size_t n_draws, std::uint64_t seed, LevelKind level,
                       double z) {
  require_index(k);
  require_index(m);
  if (k == m) throw std::invalid_argument("estimate_cov needs k != m; use variance_of_support");
  if (n_draws < 30) throw std::invalid_argument("estimate_cov needs at least 30 draws");
  const auto xs = support_stream(model, k, alpha, dir, level, n_draws, seed);
  const auto ys = support_stream(model, m, alpha, dir, level, n_draws, seed);
  const auto est = sample_covariance(xs, ys);
  CovReport r;
  r.k = k;
  r.m = m;
  r.alpha = alpha;
  r.dir_k = dir;
  r.dir_m = dir;
  r.level = level;
  r.cov_hat = est.cov;
  r.std_err = est.std_err;
  r.n_samples = n_draws;
  r.flagged = std::abs(est.cov) > z * est.std_err;
  return r;
}

double variance_of_support(const ModelSpec& model, std::size_t k, double alpha, Direction) {
  require_index(k);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha outside [0, 1]");
  const double s2 = model.noise * model.noise;
  switch (model.kind) {
    case ModelKind::iid_triangular:
    case ModelKind::shared_shift_correlated:
      return s2;
    case ModelKind::cosine_center:
      return s2 / 2.0;
    case ModelKind::cosine_center_spread: {
      // cos kU and sin kU are uncorrelated with variance 1/2 each.
      const double b = (1.0 - alpha) * model.base_spread * model.modulation;
      return s2 / 2.0 + b * b / 2.0;
    }
  }
  throw std::invalid_argument("unknown model kind");
}

double variance_condition(const ModelSpec& model, std::size_t n, double alpha, Direction dir) {
  if (n < 1) throw std::invalid_argument("variance_condition needs n >= 1");
  double total = 0.0;
  for (std::size_t k = 1; k <= n; ++k) total += variance_of_support(model, k, alpha, dir);
  const double nd = static_cast<double>(n);
  return total / (nd * nd);
}

std::vector<CovReport> uncorrelatedness_report(const ModelSpec& model,
                                               const UncorrelatednessOptions& options) {
  if (options.max_k < 2) throw std::invalid_argument("uncorrelatedness_report needs max_k >= 2");
  if (options.n_draws < 30) throw std::invalid_argument("uncorrelatedness_report needs >= 30 draws");

  struct Cell {
    double alpha;
    LevelKind level;
  };
  std::vector<Cell> cells;
  for (double a : options.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("report alpha outside [0, 1]");
    if (a > 0.0) cells.push_back({a, LevelKind::at});
    if (a < 1.0) cells.push_back({a, LevelKind::right_limit});
  }

  const std::size_t K = options.max_k;
  const std::size_t C = cells.size();
  const std::size_t n = options.n_draws;
  // Stream index: ((k - 1) * C + c) * 2 + d, d = 0 for -1 and 1 for +1.
  auto slot = [C](std::size_t k, std::size_t c, std::size_t d) { return ((k - 1) * C + c) * 2 + d; };
  std::vector<double> values(K * C * 2);
  auto fill = [&](std::size_t i) {
    const OmegaDraw draw = realize(model, derive_omega(options.seed, i));
    for (std::size_t k = 1; k <= K; ++k) {
      const FuzzyNumber x = sample(model, k, draw);
      for (std::size_t c = 0; c < C; ++c) {
        const Interval lvl = read_level(x, cells[c].alpha, cells[c].level);
        values[slot(k, c, 0)] = support(Direction::minus, lvl);
        values[slot(k, c, 1)] = support(Direction::plus, lvl);
      }
    }
  };

  fill(0);
  const std::vector<double> shift = values;
  std::vector<double> sums(values.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    fill(i);
    for (std::size_t s = 0; s < values.size(); ++s) sums[s] += values[s] - shift[s];
  }
  std::vector<double> means(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) means[s] = sums[s] / static_cast<double>(n);

  // Pairs k < m, cells, (d_k, d_m).
  auto cov_slot = [K, C](std::size_t k, std::size_t m, std::size_t c, std::size_t dk, std::size_t dm) {
    return ((((k - 1) * K + (m - 1)) * C + c) * 2 + dk) * 2 + dm;
  };
  std::vector<CovSums> acc(K * K * C * 4);
  std::vector<double> centered(values.size());
  for (std::size_t i = 0; i < n; ++i) {
    fill(i);
    for (std::size_t s = 0; s < values.size(); ++s) centered[s] = (values[s] - shift[s]) - means[s];
    for (std::size_t k = 1; k <= K; ++k) {
      for (std::size_t m = k + 1; m <= K; ++m) {
        for (std::size_t c = 0; c < C; ++c) {
          for (std::size_t dk = 0; dk < 2; ++dk) {
            for (std::size_t dm = 0; dm < 2; ++dm) {
              acc[cov_slot(k, m, c, dk, dm)].add(centered[slot(k, c, dk)], centered[slot(m, c, dm)]);
            }
          }
        }
      }
    }
  }

  std::vector<CovReport> out;
  const Direction dirs[2] = {Direction::minus, Direction::plus};
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t m = k + 1; m <= K; ++m) {
      for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t dk = 0; dk < 2; ++dk) {
          for (std::size_t dm = 0; dm < 2; ++dm) {
            const auto est = acc[cov_slot(k, m, c, dk, dm)].finish(n);
            CovReport r;
            r.k = k;
            r.m = m;
            r.alpha = cells[c].alpha;
            r.dir_k = dirs[dk];
            r.dir_m = dirs[dm];
            r.level = cells[c].level;
            r.cov_hat = est.cov;
            r.std_err = est.std_err;
            r.n_samples = n;
            r.flagged = r.same_direction() && std::abs(est.cov) > options.z * est.std_err;
            out.push_back(r);
          }
        }
      }
    }
  }
  return out;
}

void write_cov_csv(std::ostream& out, std::span<const CovReport> rows) {
  out << "k,m,alpha,dir,cov_hat,std_err,n_samples,flagged,level\n";
  for (const auto& r : rows) {
    std::string dir = dir_token(r.dir_k);
    if (!r.same_direction()) dir += "/" + dir_token(r.dir_m);
    out << r.k << ',' << r.m << ',' << text::format_double(r.alpha) << ',' << dir << ','
        << text::format_double(r.cov_hat) << ',' << text::format_double(r.std_err) << ','
        << r.n_samples << ',' << (r.flagged ? 1 : 0) << ','
        << (r.level == LevelKind::at ? "set" : "plus") << '\n';
  }
}

std::vector<CovReport> read_cov_csv(std::istream& in) {
  std::vector<CovReport> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || text::trim(line).empty()) continue;
    auto f = text::split(line, ',');
    if (f.size() != 9) {
      throw std::invalid_argument("cov csv line " + std::to_string(line_no) + ": expected 9 fields");
    }
    CovReport r;
    r.k = text::parse_uint(f[0]);
    r.m = text::parse_uint(f[1]);
    r.alpha = text::parse_double(f[2]);
    auto dirs = text::split(f[3], '/');
    r.dir_k = parse_dir(dirs[0]);
    r.dir_m = dirs.size() > 1 ? parse_dir(dirs[1]) : r.dir_k;
    r.cov_hat = text::parse_double(f[4]);
    r.std_err = text::parse_double(f[5]);
    r.n_samples = text::parse_uint(f[6]);
    r.flagged = text::parse_uint(f[7]) != 0;
    if (f[8] == "set") r.level = LevelKind::at;
    else if (f[8] == "plus") r.level = LevelKind::right_limit;
    else throw std::invalid_argument("cov csv line " + std::to_string(line_no) + ": bad level");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fuzzylln
