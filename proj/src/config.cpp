#include "fuzzylln/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fuzzylln/text.hpp"

namespace fuzzylln {

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

using Setter = std::function<void(std::string_view)>;

std::vector<double> parse_double_list(std::string_view v) {
  std::vector<double> out;
  for (auto piece : text::split(v, ',')) out.push_back(text::parse_double(piece));
  return out;
}

std::size_t parse_count(std::string_view v) { return static_cast<std::size_t>(text::parse_uint(v)); }

}  // namespace

ExperimentConfig parse_config(std::string_view input) {
  ExperimentConfig cfg;
  bool have_kind = false;
  std::size_t alpha_points = 5;
  std::size_t grid_size = 101;
  std::map<std::string, std::size_t> seen;  // "section.key" -> line

  auto& m = cfg.model;
  auto& s = cfg.study;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"model.kind", [&](auto v) { m.kind = parse_model_kind(v); have_kind = true; }},
      {"model.center", [&](auto v) { m.center = text::parse_double(v); }},
      {"model.left_spread", [&](auto v) { m.left_spread = text::parse_double(v); }},
      {"model.right_spread", [&](auto v) { m.right_spread = text::parse_double(v); }},
      {"model.w0", [&](auto v) { m.base_spread = text::parse_double(v); }},
      {"model.beta0", [&](auto v) { m.modulation = text::parse_double(v); }},
      {"model.noise", [&](auto v) { m.noise = text::parse_double(v); }},
      {"model.grid_size", [&](auto v) { grid_size = parse_count(v); }},
      {"study.schedule", [&](auto v) {
         s.schedule.clear();
         for (auto piece : text::split(v, ',')) s.schedule.push_back(parse_count(piece));
       }},
      {"study.eps", [&](auto v) { s.eps = text::parse_double(v); }},
      {"study.replications", [&](auto v) { s.replications = parse_count(v); }},
      {"study.master_seed", [&](auto v) { s.master_seed = text::parse_uint(v); }},
      {"study.threads", [&](auto v) { s.threads = static_cast<unsigned>(parse_count(v)); }},
      {"study.quadrature_points", [&](auto v) { s.quadrature_points = parse_count(v); }},
      {"study.target", [&](auto v) { cfg.criterion.target = text::parse_double(v); }},
      {"study.decrease_factor", [&](auto v) { cfg.criterion.decrease_factor = text::parse_double(v); }},
      {"output.study_csv", [&](auto v) { cfg.output.study_csv = std::string(v); }},
      {"output.plot_data", [&](auto v) { cfg.output.plot_data = std::string(v); }},
      {"output.cov_csv", [&](auto v) { cfg.output.cov_csv = std::string(v); }},
      {"output.variance_data", [&](auto v) { cfg.output.variance_data = std::string(v); }},
      {"check.z", [&](auto v) { cfg.check.z = text::parse_double(v); }},
      {"check.max_k", [&](auto v) { cfg.check.max_k = parse_count(v); }},
      {"check.n_draws", [&](auto v) { cfg.check.n_draws = parse_count(v); }},
      {"check.alpha_points", [&](auto v) { alpha_points = parse_count(v); }},
      {"check.alpha_grid", [&](auto v) { cfg.check.alphas = parse_double_list(v); }},
      {"diagnose.n", [&](auto v) { cfg.diagnose.n = parse_count(v); }},
      {"diagnose.eps", [&](auto v) { cfg.diagnose.eps = text::parse_double(v); }},
  };

  std::string section;
  std::size_t model_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < input.size()) {
    auto end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (section != "model" && section != "study" && section != "output" && section != "check" &&
          section != "diagnose") {
        throw ConfigError(line_no, "unknown section [" + section + "]");
      }
      if (section == "model" && model_line == 0) model_line = line_no;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    if (section.empty()) throw ConfigError(line_no, "key outside of any [section]");
    const std::string key = section + "." + std::string(text::trim(line.substr(0, eq)));
    const std::string_view value = text::trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(line_no, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, key + ": " + e.what());
    }
    seen[key] = line_no;
  }

  auto line_of = [&](const std::string& key) {
    auto it = seen.find(key);
    return it == seen.end() ? line_no : it->second;
  };

  if (!have_kind) {
    throw ConfigError(model_line > 0 ? model_line : line_no, "missing required key 'kind' in [model]");
  }
  try {
    m.grid = uniform_alpha_grid(grid_size);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line_of("model.grid_size"), e.what());
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line_of("model.kind"), e.what());
  }

  if (s.schedule.empty()) throw ConfigError(line_of("study.schedule"), "schedule is empty");
  for (std::size_t i = 0; i < s.schedule.size(); ++i) {
    if (s.schedule[i] < 1 || (i > 0 && s.schedule[i - 1] >= s.schedule[i])) {
      throw ConfigError(line_of("study.schedule"), "schedule must be positive and strictly increasing");
    }
  }
  if (!(s.eps > 0.0)) throw ConfigError(line_of("study.eps"), "eps must be positive");
  if (s.replications < 1) throw ConfigError(line_of("study.replications"), "replications must be >= 1");
  if (cfg.check.max_k < 2) throw ConfigError(line_of("check.max_k"), "max_k must be >= 2");
  if (cfg.check.n_draws < 30) throw ConfigError(line_of("check.n_draws"), "n_draws must be >= 30");
  if (!(cfg.check.z > 0.0)) throw ConfigError(line_of("check.z"), "z must be positive");
  if (!(cfg.diagnose.eps > 0.0)) throw ConfigError(line_of("diagnose.eps"), "eps must be positive");
  if (cfg.diagnose.n < 1) throw ConfigError(line_of("diagnose.n"), "n must be >= 1");
  if (!seen.contains("check.alpha_grid")) {
    if (alpha_points < 2) throw ConfigError(line_of("check.alpha_points"), "alpha_points must be >= 2");
    cfg.check.alphas = uniform_alpha_grid(alpha_points);
  }
  for (double a : cfg.check.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError(line_of("check.alpha_grid"), "alphas must lie in [0, 1]");
  }
  cfg.check.seed = s.master_seed;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fuzzylln
