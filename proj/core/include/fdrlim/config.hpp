#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdrlim {

// Flat key=value experiment description. Recognized keys: model, pi0,
// alphas, procedures, n, trials, seed, threads, out. '#' starts a comment.
// Command line flags override file values.
struct ExperimentConfig {
  std::string model = "ustep(cut=0.5)";
  double pi0 = 0.75;
  std::vector<double> alphas;            // empty -> default grid 0.05:0.70:0.05
  std::vector<std::string> procedures;   // procedure spec strings
  std::size_t n = 500;
  std::size_t trials = 1000;
  std::uint64_t seed = 20260819;
  unsigned threads = 0;                  // 0 -> hardware concurrency
  std::string out = "simulation.csv";
};

ExperimentConfig load_config_file(const std::string& path);

// Applies one key=value pair; throws ConfigError for unknown keys or
// unparseable values.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// "lo:hi:step" (inclusive endpoints, within 1e-9) or a comma list.
std::vector<double> parse_alpha_grid(const std::string& text);

std::vector<double> default_simulation_alphas();  // 0.05, 0.10, ..., 0.70

}  // namespace fdrlim
