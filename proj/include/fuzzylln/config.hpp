#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fuzzylln/lln.hpp"
#include "fuzzylln/models.hpp"

namespace fuzzylln {

/// Everything a CLI run needs. Parsed from a `key = value` file with
/// `[model]`, `[study]`, `[output]`, `[check]` and `[diagnose]` sections.
struct ExperimentConfig {
  ModelSpec model;
  StudyOptions study;
  ConvergenceCriterion criterion;

  struct Output {
    std::string study_csv = "study.csv";
    std::string plot_data = "study_plot.dat";
    std::string cov_csv = "cov_report.csv";
    std::string variance_data = "variance_condition.dat";
  } output;

  // seed is filled from [study] master_seed.
  UncorrelatednessOptions check;

  struct Diagnose {
    std::size_t n = 100;
    double eps = 0.1;  // partition eps, independent of the study eps
  } diagnose;
};

/// Malformed configuration; what() starts with "line N: ".
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file; an unreadable file is a ConfigError at line 0.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace fuzzylln
