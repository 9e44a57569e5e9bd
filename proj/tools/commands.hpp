#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "rdpso/rdpso_c.h"

namespace rdpso_cli {

// Each command validates its plan, writes its files under the plan's output
// directory and returns what it wrote. Failures throw std::runtime_error
// (ApiError for errors reported by the library).

// raw.csv plus trajectories/<label>__<problem>.csv holding the per-iteration
// median of best-so-far error across runs. Rows are in plan order.
std::vector<RawRow> cmd_run(const ExperimentPlan& plan);

struct SweepEntry {
  std::size_t setting = 0;  // cell index in grid order
  std::string label;
  std::vector<std::pair<std::string, double>> values;
  std::vector<double> means;  // per problem, plan order
  std::vector<int> ranks;     // per problem, competition ranking by mean
  int summed_rank = 0;
  double average_rank = 0.0;
};

// sweep_raw.csv, sweep_means.csv and sweep_ranking.csv. Returns settings
// sorted by summed rank (ties by grid order).
std::vector<SweepEntry> cmd_sweep(const SweepPlan& plan);

// boundedness_map.csv and, when requested, trajectories/alpha=<a>_beta=<b>.csv
// for the first rep of each cell.
std::vector<rdpso_boundedness_row> cmd_dynamics(const DynamicsPlan& plan);

struct ReportResult {
  std::vector<std::string> algorithms;  // sorted by average rank, then name
  std::vector<std::string> problems;    // sorted by name
  std::map<std::pair<std::string, std::string>, int> ranks;
  std::map<std::string, double> average_ranks;
  std::string table;  // human-readable summary, also written to report.txt
};

// summary.csv, pairwise.csv, ranks.csv and report.txt from raw result files.
ReportResult cmd_report(const ReportPlan& plan);

// Routes library warnings to stderr, printing each distinct message once.
void install_warning_filter();

}  // namespace rdpso_cli
