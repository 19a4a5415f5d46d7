#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "fuzzylln/config.hpp"

namespace fuzzylln {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // bad flags or config
  kExitCheckFailed = 2,    // no convergence / flagged covariances
  kExitBoundViolated = 3,  // decomposition bound broken; never expected
};

struct CommandOptions {
  std::filesystem::path out_dir = "out";
  bool quiet = false;
  std::optional<unsigned> threads;  // overrides [study] threads
};

/// Convergence study: writes the study CSV and plot data; kExitOk when the
/// convergence criterion holds, kExitCheckFailed otherwise.
int cmd_study(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// Uncorrelatedness report plus variance-condition sweep over the schedule;
/// kExitOk when nothing is flagged.
int cmd_check_model(const ExperimentConfig& config, const CommandOptions& options,
                    std::ostream& log);

/// One decomposition diagnostic at outcome derive_omega(seed, 0).
int cmd_diagnose(const ExperimentConfig& config, std::size_t n, std::uint64_t seed,
                 const CommandOptions& options, std::ostream& log);

/// Full argument handling: `study | check-model | diagnose` with
/// `--config PATH`, `--out DIR`, `--quiet`, `--threads N`, and for diagnose
/// `--n N`, `--seed S`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fuzzylln
