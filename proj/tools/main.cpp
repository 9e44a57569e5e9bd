#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capi.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace rdpso_cli;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

struct ExperimentFlags {
  std::optional<std::size_t> runs, particles, iterations, dim;
  std::vector<std::string> algorithms, problems;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("-c,--config", f.config, "YAML config file")->check(CLI::ExistingFile);
  cmd->add_option("-o,--output-dir", f.output_dir,
                  "Output directory (default: $RDPSO_OUTPUT_DIR or ./rdpso-results)");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)");
}

void add_experiment(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--runs", f.runs, "Runs per algorithm and problem");
  cmd->add_option("--particles", f.particles, "Swarm size");
  cmd->add_option("--iterations", f.iterations, "Iterations per run");
  cmd->add_option("--dim", f.dim, "Problem dimension");
  cmd->add_option("--algorithms", f.algorithms,
                  "Algorithms, optionally with parameters: name[:key=value...]")
      ->delimiter(',');
  cmd->add_option("--problems", f.problems, "Problem names")->delimiter(',');
}

Config base_config(const CommonFlags& f) {
  Config cfg = f.config.empty() ? default_config() : load_config(f.config);
  if (f.output_dir) cfg.experiment.output_dir = cfg.dynamics.output_dir = *f.output_dir;
  if (f.seed) cfg.experiment.base_seed = cfg.dynamics.seed = *f.seed;
  if (f.threads) cfg.experiment.threads = *f.threads;
  return cfg;
}

ExperimentPlan experiment_plan(const ExperimentFlags& f, const Config& cfg) {
  ExperimentPlan plan = cfg.experiment;
  if (f.runs) plan.runs = *f.runs;
  if (f.particles) plan.particles = *f.particles;
  if (f.iterations) plan.iterations = *f.iterations;
  if (f.dim) plan.dimension = *f.dim;
  if (!f.algorithms.empty()) {
    plan.algorithms.clear();
    for (const auto& a : f.algorithms) plan.algorithms.push_back(parse_algorithm_spec(a));
  }
  if (!f.problems.empty()) {
    plan.problems.clear();
    for (const auto& p : f.problems) plan.problems.push_back({p});
  }
  if (plan.algorithms.empty()) {
    for (const auto& a : algorithm_names()) plan.algorithms.push_back(parse_algorithm_spec(a));
  }
  if (plan.problems.empty()) {
    for (const auto& p : problem_names()) plan.problems.push_back({p});
  }
  return plan;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random drift particle swarm optimization: benchmarks, sweeps and dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rdpso_version()));

  CommonFlags common;
  ExperimentFlags exp;

  auto* run = app.add_subcommand("run", "Run algorithms on benchmark problems");
  add_common(run, common);
  add_experiment(run, exp);

  auto* sweep = app.add_subcommand("sweep", "Rank parameter settings of one algorithm");
  add_common(sweep, common);
  add_experiment(sweep, exp);
  std::vector<double> alpha, alpha_start, alpha_end, beta;
  sweep->add_option("--alpha", alpha, "Constant alpha values")->delimiter(',');
  sweep->add_option("--alpha-start", alpha_start, "Initial alpha values")->delimiter(',');
  sweep->add_option("--alpha-end", alpha_end, "Final alpha values")->delimiter(',');
  sweep->add_option("--beta", beta, "Beta values")->delimiter(',');

  auto* dyn = app.add_subcommand("dynamics", "Single-particle stability map");
  add_common(dyn, common);
  std::vector<double> alphas, betas;
  std::optional<std::size_t> steps, reps;
  bool trajectories = false;
  dyn->add_option("--alphas", alphas, "Alpha grid")->delimiter(',');
  dyn->add_option("--betas", betas, "Beta grid")->delimiter(',');
  dyn->add_option("--steps", steps, "Steps per trajectory");
  dyn->add_option("--reps", reps, "Trajectories per cell");
  dyn->add_flag("--trajectories", trajectories, "Also write one trajectory per cell");

  auto* report = app.add_subcommand("report", "Summaries, t tests and ranks from raw results");
  add_common(report, common);
  std::vector<std::string> inputs;
  report->add_option("inputs", inputs, "raw.csv files");

  auto* list = app.add_subcommand("list", "List algorithm and problem names");

  CLI11_PARSE(app, argc, argv);

  try {
    install_warning_filter();
    if (list->parsed()) {
      std::cout << "algorithms:\n";
      for (const auto& a : algorithm_names()) std::cout << "  " << a << '\n';
      std::cout << "problems:\n";
      for (const auto& p : problem_names()) std::cout << "  " << p << '\n';
      return 0;
    }
    Config cfg = base_config(common);
    if (run->parsed()) {
      const ExperimentPlan plan = experiment_plan(exp, cfg);
      const auto rows = cmd_run(plan);
      std::cout << "wrote " << rows.size() << " runs to " << (plan.output_dir / "raw.csv").string() << '\n';
    } else if (sweep->parsed()) {
      SweepPlan plan;
      plan.experiment = experiment_plan(exp, cfg);
      if (!cfg.sweep_algorithm.empty() && exp.algorithms.empty()) {
        plan.experiment.algorithms = {parse_algorithm_spec(cfg.sweep_algorithm)};
      }
      plan.grid = cfg.sweep_grid;
      auto set_axis = [&](const std::string& key, const std::vector<double>& values) {
        if (values.empty()) return;
        std::erase_if(plan.grid, [&](const auto& axis) { return axis.first == key; });
        plan.grid.emplace_back(key, values);
      };
      set_axis("alpha", alpha);
      set_axis("alpha_start", alpha_start);
      set_axis("alpha_end", alpha_end);
      set_axis("beta", beta);
      const auto entries = cmd_sweep(plan);
      std::cout << "position  summed_rank  setting\n";
      for (std::size_t k = 0; k < entries.size(); ++k) {
        std::printf("%8zu  %11d  %s\n", k + 1, entries[k].summed_rank, entries[k].label.c_str());
      }
    } else if (dyn->parsed()) {
      DynamicsPlan plan = cfg.dynamics;
      if (!alphas.empty()) plan.alphas = alphas;
      if (!betas.empty()) plan.betas = betas;
      if (steps) plan.steps = *steps;
      if (reps) plan.reps = *reps;
      if (trajectories) plan.trajectories = true;
      const auto rows = cmd_dynamics(plan);
      std::cout << "alpha,beta,delta,classification,diverged_fraction\n";
      for (const auto& r : rows) {
        std::printf("%g,%g,%.6f,%s,%g\n", r.alpha, r.beta, r.delta,
                    rdpso_boundedness_string(r.classification), r.diverged_fraction);
      }
    } else if (report->parsed()) {
      ReportPlan plan{cfg.report_inputs, cfg.experiment.output_dir};
      if (!inputs.empty()) plan.inputs.assign(inputs.begin(), inputs.end());
      std::cout << cmd_report(plan).table;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
