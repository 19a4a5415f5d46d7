#include "fuzzylln/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "fuzzylln/text.hpp"

namespace fuzzylln {

namespace {

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

StudyOptions effective_study(const ExperimentConfig& config, const CommandOptions& options) {
  StudyOptions study = config.study;
  if (options.threads) study.threads = *options.threads;
  return study;
}

}  // namespace

int cmd_study(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  std::vector<EnvelopeCheck> envelope;
  const StudyResult result = convergence_study(config.model, effective_study(config, options), &envelope);
  {
    auto csv = open_output(options.out_dir, config.output.study_csv);
    write_study_csv(csv, result);
    auto plot = open_output(options.out_dir, config.output.plot_data);
    write_plot_data(plot, result);
  }
  const bool ok = converged(result, config.criterion);
  if (!options.quiet) {
    log << "model " << to_string(config.model.kind) << ", eps " << text::format_double(config.study.eps)
        << ", " << config.study.replications << " replications\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const auto& r = result.rows[i];
      log << "  n=" << r.n << "  p_hat=" << r.p_hat << "  ci=[" << r.ci_lo << ", " << r.ci_hi
          << "]  mean_distance=" << r.mean_distance << "  chebyshev=" << r.chebyshev_bound;
      if (r.oracle_tail) log << "  oracle=" << *r.oracle_tail;
      log << "  scalar-envelope=" << (envelope[i].holds() ? "ok" : "exceeded") << '\n';
    }
    log << (ok ? "converged" : "no convergence") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_check_model(const ExperimentConfig& config, const CommandOptions& options,
                    std::ostream& log) {
  const auto rows = uncorrelatedness_report(config.model, config.check);
  const auto flagged = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CovReport& r) { return r.flagged; }));
  const auto same_dir = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CovReport& r) { return r.same_direction(); }));
  {
    auto csv = open_output(options.out_dir, config.output.cov_csv);
    write_cov_csv(csv, rows);
    auto var = open_output(options.out_dir, config.output.variance_data);
    var << "# n max_variance_condition\n";
    for (std::size_t n : config.study.schedule) {
      double worst = 0.0;
      for (double a : config.model.grid) {
        for (Direction d : kDirections) worst = std::max(worst, variance_condition(config.model, n, a, d));
      }
      var << n << ' ' << text::format_double(worst) << '\n';
    }
  }
  if (!options.quiet) {
    log << "model " << to_string(config.model.kind) << ": " << flagged << " of " << same_dir
        << " same-direction cells flagged at z = " << config.check.z << " (" << rows.size()
        << " cells reported)\n";
  }
  return flagged == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_diagnose(const ExperimentConfig& config, std::size_t n, std::uint64_t seed,
                 const CommandOptions& options, std::ostream& log) {
  const auto report = decomposition_diagnostic(config.model, n, derive_omega(seed, 0), config.diagnose.eps);
  if (!options.quiet) {
    log << "n=" << n << " seed=" << seed << " partition_cells=" << report.cells << '\n'
        << "distance         " << text::format_double(report.distance) << '\n'
        << "at_cuts          " << text::format_double(report.terms.at_cuts) << '\n'
        << "at_right_limits  " << text::format_double(report.terms.at_right_limits) << '\n'
        << "2*drift          " << text::format_double(2.0 * report.terms.drift) << '\n'
        << "bound            " << text::format_double(report.terms.bound()) << '\n'
        << (report.holds() ? "bound holds" : "BOUND VIOLATED") << '\n';
  }
  return report.holds() ? kExitOk : kExitBoundViolated;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy random variable weak-law simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  bool quiet = false;
  unsigned threads = 0;
  std::size_t diag_n = 0;
  std::uint64_t diag_seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--quiet", quiet, "suppress progress output");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
  };
  auto* study = app.add_subcommand("study", "run a convergence study");
  auto* check = app.add_subcommand("check-model", "report support-process covariances");
  auto* diagnose = app.add_subcommand("diagnose", "evaluate the partition bound on one trial");
  add_common(study);
  add_common(check);
  add_common(diagnose);
  auto* n_opt = diagnose->add_option("--n", diag_n, "number of averaged terms");
  auto* seed_opt = diagnose->add_option("--seed", diag_seed, "master seed of the outcome");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  ExperimentConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << config_path << ": " << e.what() << '\n';
    return kExitUsage;
  }

  CommandOptions options;
  options.out_dir = out_dir;
  options.quiet = quiet;
  auto* active = app.get_subcommands().front();
  if (active->count("--threads") > 0) options.threads = threads;

  try {
    if (active == study) return cmd_study(config, options, out);
    if (active == check) return cmd_check_model(config, options, out);
    const std::size_t n = n_opt->count() > 0 ? diag_n : config.diagnose.n;
    const std::uint64_t seed = seed_opt->count() > 0 ? diag_seed : config.study.master_seed;
    if (n < 1) {
      err << "error: --n must be at least 1\n";
      return kExitUsage;
    }
    return cmd_diagnose(config, n, seed, options, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fuzzylln
