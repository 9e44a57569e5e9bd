#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdpso/rdpso_c.h"

namespace rdpso_cli {

struct AlgorithmSpec {
  std::string label;  // column value in result files; defaults to the name
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;  // applied in order
};

struct ProblemSpec {
  std::string name;
  std::filesystem::path shift_file;     // optional
  std::filesystem::path rotation_file;  // optional
  std::optional<double> bias;
  bool bounds_enforced = false;
};

struct ExperimentPlan {
  std::vector<AlgorithmSpec> algorithms;
  std::vector<ProblemSpec> problems;
  std::size_t dimension = 30;
  std::size_t runs = 20;
  std::size_t particles = 40;
  std::size_t iterations = 5000;
  std::uint64_t base_seed = 1;
  std::uint64_t instance_seed = 2005;
  std::filesystem::path output_dir;
  unsigned threads = 0;  // 0: one per hardware thread
};

// Parameter grid swept over one algorithm. Cells enumerate the cartesian
// product with the first axis varying slowest.
struct SweepPlan {
  ExperimentPlan experiment;  // exactly one algorithm
  std::vector<std::pair<std::string, std::vector<double>>> grid;
};

struct DynamicsPlan {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::size_t steps = 5000;
  std::size_t reps = 20;
  std::uint64_t seed = 1;
  rdpso_dynamics_config base = rdpso_dynamics_default_config();
  bool trajectories = false;
  std::filesystem::path output_dir;
};

struct ReportPlan {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path output_dir;
};

// Everything a config file can hold; unset sections keep their defaults.
struct Config {
  ExperimentPlan experiment;
  std::string sweep_algorithm;
  std::vector<std::pair<std::string, std::vector<double>>> sweep_grid;
  DynamicsPlan dynamics;
  std::vector<std::filesystem::path> report_inputs;
};

// Defaults plus the output directory from RDPSO_OUTPUT_DIR (or "rdpso-results").
Config default_config();

// Reads a YAML config over the defaults. Relative data-file paths resolve
// against the config file's directory. Throws std::runtime_error.
Config load_config(const std::filesystem::path& path);

std::filesystem::path default_output_dir();

// "rdpso-gbest" or "rdpso-gbest:beta=1.6:alpha_start=0.8" style specs.
AlgorithmSpec parse_algorithm_spec(const std::string& text);

}  // namespace rdpso_cli
