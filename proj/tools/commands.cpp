#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "capi.hpp"

namespace rdpso_cli {
namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kSettingSeedStride = 1'000'000;

// Runs task(k) for k in [0, count) on a bounded pool; rethrows the first failure.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          try {
            task(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct Prepared {
  std::vector<ProblemPtr> problems;
  std::vector<double> biases;
  std::vector<OptimizerPtr> optimizers;
};

OptimizerPtr prepare_optimizer(const AlgorithmSpec& spec, const ExperimentPlan& plan) {
  OptimizerPtr opt = make_optimizer(spec.name);
  check(rdpso_optimizer_set(opt.get(), "particles", static_cast<double>(plan.particles)));
  check(rdpso_optimizer_set(opt.get(), "iterations", static_cast<double>(plan.iterations)));
  for (const auto& [key, value] : spec.parameters) {
    try {
      check(rdpso_optimizer_set(opt.get(), key.c_str(), value));
    } catch (const ApiError& e) {
      throw ApiError(e.status(), spec.label + ": " + e.what());
    }
  }
  return opt;
}

void validate(const ExperimentPlan& plan) {
  if (plan.runs == 0) throw std::runtime_error("runs must be >= 1");
  if (plan.algorithms.empty()) throw std::runtime_error("no algorithms selected");
  if (plan.problems.empty()) throw std::runtime_error("no problems selected");
  std::set<std::string> labels;
  for (const auto& a : plan.algorithms) {
    require_plain_label(a.label);
    if (!labels.insert(a.label).second) throw std::runtime_error("duplicate algorithm label '" + a.label + "'");
  }
  std::set<std::string> names;
  for (const auto& p : plan.problems) {
    require_plain_label(p.name);
    if (!names.insert(p.name).second) throw std::runtime_error("duplicate problem '" + p.name + "'");
  }
}

Prepared prepare(const ExperimentPlan& plan) {
  validate(plan);
  Prepared out;
  for (const auto& spec : plan.problems) {
    ProblemPtr p = make_problem(spec.name, plan.dimension, plan.instance_seed);
    if (!spec.shift_file.empty()) {
      const std::string shift = spec.shift_file.string();
      const std::string rotation = spec.rotation_file.string();
      check(rdpso_problem_load_data(p.get(), shift.c_str(),
                                    spec.rotation_file.empty() ? nullptr : rotation.c_str()));
    }
    if (spec.bias) check(rdpso_problem_set_bias(p.get(), *spec.bias));
    check(rdpso_problem_set_bounds_enforced(p.get(), spec.bounds_enforced ? 1 : 0));
    out.biases.push_back(rdpso_problem_bias(p.get()));
    out.problems.push_back(std::move(p));
  }
  for (const auto& spec : plan.algorithms) out.optimizers.push_back(prepare_optimizer(spec, plan));
  return out;
}

struct RunResult {
  double final_best = 0.0;
  double wall_ms = 0.0;
  std::vector<double> trajectory;  // best-so-far error per iteration
};

std::vector<RunResult> run_cell(const rdpso_optimizer* opt, const rdpso_problem* problem, double bias,
                                std::size_t runs, std::uint64_t first_seed, unsigned threads,
                                bool keep_trajectories) {
  std::vector<RunResult> results(runs);
  parallel_for(runs, threads, [&](std::size_t r) {
    const RecordPtr rec = run(opt, problem, first_seed + r);
    RunResult& out = results[r];
    out.final_best = rdpso_run_record_best_fitness(rec.get()) - bias;
    out.wall_ms = rdpso_run_record_wall_ms(rec.get());
    if (keep_trajectories) {
      const auto traj = trajectory(rec.get());
      out.trajectory.reserve(traj.size());
      for (double v : traj) out.trajectory.push_back(v - bias);
    }
  });
  return results;
}

double median(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

void write_median_trajectory(const fs::path& path, const std::vector<RunResult>& results) {
  CsvWriter out(path, "iteration,median_best");
  const std::size_t length = results.front().trajectory.size();
  std::vector<double> column(results.size());
  for (std::size_t n = 0; n < length; ++n) {
    for (std::size_t r = 0; r < results.size(); ++r) column[r] = results[r].trajectory[n];
    out.field(static_cast<std::uint64_t>(n)).field(median(column)).end_row();
  }
  out.close();
}

std::string format_value(double v) { return format_number(v); }

std::string setting_label(const std::string& algorithm,
                          const std::vector<std::pair<std::string, double>>& values) {
  std::string label = algorithm + "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) label += ';';
    label += values[k].first + "=" + format_value(values[k].second);
  }
  return label + "]";
}

// Competition ranking of values ascending; equal values share a rank.
std::vector<int> rank_by_value(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> ranks(values.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const bool tied = k > 0 && values[order[k]] == values[order[k - 1]];
    ranks[order[k]] = tied ? ranks[order[k - 1]] : static_cast<int>(k + 1);
  }
  return ranks;
}

}  // namespace

void install_warning_filter() {
  rdpso_set_warning_handler([](const char* message) {
    static std::mutex mutex;
    static std::set<std::string> seen;
    std::lock_guard lock(mutex);
    if (seen.insert(message).second) std::fprintf(stderr, "warning: %s\n", message);
  });
}

std::vector<RawRow> cmd_run(const ExperimentPlan& plan) {
  const Prepared prepared = prepare(plan);
  fs::create_directories(plan.output_dir);
  CsvWriter raw(plan.output_dir / "raw.csv", kRawHeader);
  std::vector<RawRow> rows;
  for (std::size_t a = 0; a < plan.algorithms.size(); ++a) {
    for (std::size_t p = 0; p < plan.problems.size(); ++p) {
      const auto results =
          run_cell(prepared.optimizers[a].get(), prepared.problems[p].get(), prepared.biases[p],
                   plan.runs, plan.base_seed, plan.threads, true);
      for (std::size_t r = 0; r < results.size(); ++r) {
        RawRow row{plan.algorithms[a].label, plan.problems[p].name, r, plan.base_seed + r,
                   results[r].final_best, results[r].wall_ms};
        write_raw_row(raw, row);
        rows.push_back(std::move(row));
      }
      write_median_trajectory(plan.output_dir / "trajectories" /
                                  (plan.algorithms[a].label + "__" + plan.problems[p].name + ".csv"),
                              results);
    }
  }
  raw.close();
  return rows;
}

std::vector<SweepEntry> cmd_sweep(const SweepPlan& plan) {
  const ExperimentPlan& ex = plan.experiment;
  if (ex.algorithms.size() != 1) throw std::runtime_error("sweep takes exactly one algorithm");
  if (plan.grid.empty()) throw std::runtime_error("sweep grid is empty");
  std::size_t cells = 1;
  for (const auto& [key, values] : plan.grid) {
    if (values.empty()) throw std::runtime_error("sweep axis '" + key + "' has no values");
    cells *= values.size();
  }
  const Prepared prepared = prepare(ex);

  std::vector<SweepEntry> entries(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    std::vector<std::pair<std::string, double>> values(plan.grid.size());
    for (std::size_t k = plan.grid.size(); k-- > 0;) {
      const auto& axis = plan.grid[k].second;
      values[k] = {plan.grid[k].first, axis[rest % axis.size()]};
      rest /= axis.size();
    }
    entries[c].setting = c;
    entries[c].values = values;
    entries[c].label = setting_label(ex.algorithms.front().label, values);
  }

  fs::create_directories(ex.output_dir);
  CsvWriter raw(ex.output_dir / "sweep_raw.csv", kRawHeader);
  for (auto& entry : entries) {
    AlgorithmSpec spec = ex.algorithms.front();
    spec.label = entry.label;
    for (const auto& v : entry.values) spec.parameters.push_back(v);
    const OptimizerPtr opt = prepare_optimizer(spec, ex);
    const std::uint64_t first_seed = ex.base_seed + entry.setting * kSettingSeedStride;
    for (std::size_t p = 0; p < ex.problems.size(); ++p) {
      const auto results = run_cell(opt.get(), prepared.problems[p].get(), prepared.biases[p],
                                    ex.runs, first_seed, ex.threads, false);
      double sum = 0.0;
      for (std::size_t r = 0; r < results.size(); ++r) {
        sum += results[r].final_best;
        write_raw_row(raw, {entry.label, ex.problems[p].name, r, first_seed + r,
                            results[r].final_best, results[r].wall_ms});
      }
      entry.means.push_back(sum / static_cast<double>(results.size()));
    }
  }
  raw.close();

  for (std::size_t p = 0; p < ex.problems.size(); ++p) {
    std::vector<double> means;
    for (const auto& e : entries) means.push_back(e.means[p]);
    const auto ranks = rank_by_value(means);
    for (std::size_t c = 0; c < cells; ++c) {
      entries[c].ranks.push_back(ranks[c]);
      entries[c].summed_rank += ranks[c];
    }
  }
  for (auto& e : entries) {
    e.average_rank = static_cast<double>(e.summed_rank) / static_cast<double>(ex.problems.size());
  }

  CsvWriter means(ex.output_dir / "sweep_means.csv", "setting,label,problem,mean,rank");
  for (const auto& e : entries) {
    for (std::size_t p = 0; p < ex.problems.size(); ++p) {
      means.field(static_cast<std::uint64_t>(e.setting))
          .field(e.label)
          .field(ex.problems[p].name)
          .field(e.means[p])
          .field(static_cast<std::uint64_t>(e.ranks[p]))
          .end_row();
    }
  }
  means.close();

  std::stable_sort(entries.begin(), entries.end(), [](const SweepEntry& a, const SweepEntry& b) {
    return a.summed_rank < b.summed_rank;
  });
  std::string header = "position,setting,label";
  for (const auto& axis : plan.grid) header += "," + axis.first;
  header += ",summed_rank,average_rank";
  CsvWriter ranking(ex.output_dir / "sweep_ranking.csv", header);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    ranking.field(static_cast<std::uint64_t>(k + 1))
        .field(static_cast<std::uint64_t>(entries[k].setting))
        .field(entries[k].label);
    for (const auto& v : entries[k].values) ranking.field(v.second);
    ranking.field(static_cast<std::uint64_t>(entries[k].summed_rank))
        .field(entries[k].average_rank)
        .end_row();
  }
  ranking.close();
  return entries;
}

std::vector<rdpso_boundedness_row> cmd_dynamics(const DynamicsPlan& plan) {
  if (plan.alphas.empty() || plan.betas.empty()) {
    throw std::runtime_error("dynamics needs at least one alpha and one beta");
  }
  std::vector<rdpso_boundedness_row> rows(plan.alphas.size() * plan.betas.size());
  check(rdpso_boundedness_map(plan.alphas.data(), plan.alphas.size(), plan.betas.data(),
                              plan.betas.size(), plan.reps, plan.steps, plan.seed, &plan.base,
                              rows.data()));
  fs::create_directories(plan.output_dir);
  CsvWriter out(plan.output_dir / "boundedness_map.csv",
                "alpha,beta,delta,delta_error,classification,diverged_fraction");
  for (const auto& row : rows) {
    out.field(row.alpha)
        .field(row.beta)
        .field(row.delta)
        .field(row.delta_error)
        .field(rdpso_boundedness_string(row.classification))
        .field(row.diverged_fraction)
        .end_row();
  }
  out.close();

  if (plan.trajectories) {
    std::vector<double> gaps(plan.steps + 1);
    for (std::size_t c = 0; c < rows.size(); ++c) {
      rdpso_dynamics_config cfg = plan.base;
      cfg.alpha = rows[c].alpha;
      cfg.beta = rows[c].beta;
      cfg.steps = plan.steps;
      std::size_t length = 0;
      int diverged = 0;
      // Same seed as the cell's first rep in the map.
      check(rdpso_simulate_particle(&cfg, plan.seed + c * kSettingSeedStride, gaps.data(),
                                    gaps.size(), &length, &diverged));
      CsvWriter traj(plan.output_dir / "trajectories" /
                         ("alpha=" + format_value(cfg.alpha) + "_beta=" + format_value(cfg.beta) +
                          ".csv"),
                     "step,log_gap");
      for (std::size_t n = 0; n < length; ++n) {
        traj.field(static_cast<std::uint64_t>(n)).field(gaps[n]).end_row();
      }
      traj.close();
    }
  }
  return rows;
}

namespace {

std::string fixed_width(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

}  // namespace

ReportResult cmd_report(const ReportPlan& plan) {
  if (plan.inputs.empty()) throw std::runtime_error("report needs at least one raw CSV");
  // (algorithm, problem) → run index → value; ordered containers keep the
  // output independent of input row order.
  std::map<std::pair<std::string, std::string>, std::map<std::size_t, double>> cells;
  std::set<std::string> algorithm_set, problem_set;
  for (const auto& input : plan.inputs) {
    for (const RawRow& row : read_raw_csv(input)) {
      algorithm_set.insert(row.algorithm);
      problem_set.insert(row.problem);
      auto& runs = cells[{row.algorithm, row.problem}];
      if (!runs.emplace(row.run, row.final_best).second) {
        throw std::runtime_error("duplicate run " + std::to_string(row.run) + " for " +
                                 row.algorithm + " on " + row.problem);
      }
    }
  }
  const std::vector<std::string> algorithms(algorithm_set.begin(), algorithm_set.end());
  const std::vector<std::string> problems(problem_set.begin(), problem_set.end());

  std::vector<std::string> gaps;
  for (const auto& a : algorithms) {
    for (const auto& p : problems) {
      const auto it = cells.find({a, p});
      if (it == cells.end()) {
        gaps.push_back(a + " on " + p + " (no runs)");
      } else if (it->second.size() < 2) {
        gaps.push_back(a + " on " + p + " (1 run, need 2)");
      }
    }
  }
  if (!gaps.empty()) {
    std::string msg = "incomplete result grid, missing:";
    for (const auto& g : gaps) msg += "\n  " + g;
    throw std::runtime_error(msg);
  }
  if (algorithms.size() < 2) throw std::runtime_error("report needs at least two algorithms");

  auto values_of = [&](const std::string& a, const std::string& p) {
    std::vector<double> v;
    for (const auto& [run, value] : cells.at({a, p})) v.push_back(value);
    return v;
  };

  ReportResult result;
  result.problems = problems;
  std::map<std::pair<std::string, std::string>, std::pair<double, double>> summaries;

  fs::create_directories(plan.output_dir);
  CsvWriter summary(plan.output_dir / "summary.csv", "algorithm,problem,mean,std");
  CsvWriter pairwise(plan.output_dir / "pairwise.csv", "problem,algo_a,algo_b,t,p,significant");
  for (const auto& p : problems) {
    std::vector<std::vector<double>> samples;
    std::vector<double> means;
    for (const auto& a : algorithms) {
      samples.push_back(values_of(a, p));
      double mean = 0.0, sd = 0.0;
      check(rdpso_summarize(samples.back().data(), samples.back().size(), &mean, &sd));
      summaries[{a, p}] = {mean, sd};
      means.push_back(mean);
    }

    std::vector<const double*> data;
    std::vector<std::size_t> sizes;
    for (const auto& s : samples) {
      data.push_back(s.data());
      sizes.push_back(s.size());
    }
    std::vector<int> ranks(algorithms.size());
    check(rdpso_rank_problem(data.data(), sizes.data(), samples.size(), ranks.data()));
    for (std::size_t k = 0; k < algorithms.size(); ++k) result.ranks[{algorithms[k], p}] = ranks[k];

    std::vector<std::size_t> order(algorithms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return means[x] < means[y]; });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const auto& lo = samples[order[k]];
      const auto& hi = samples[order[k + 1]];
      double t = 0.0, pv = 0.0;
      int significant = 0;
      check(rdpso_unpaired_t(lo.data(), lo.size(), hi.data(), hi.size(), &t, &pv, &significant));
      pairwise.field(p)
          .field(algorithms[order[k]])
          .field(algorithms[order[k + 1]])
          .field(t)
          .field(pv)
          .field(significant ? "true" : "false")
          .end_row();
    }
  }
  for (const auto& a : algorithms) {
    for (const auto& p : problems) {
      const auto& [mean, sd] = summaries.at({a, p});
      summary.field(a).field(p).field(mean).field(sd).end_row();
    }
  }
  summary.close();
  pairwise.close();

  std::vector<int> table(algorithms.size() * problems.size());
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (std::size_t p = 0; p < problems.size(); ++p) {
      table[a * problems.size() + p] = result.ranks.at({algorithms[a], problems[p]});
    }
  }
  std::vector<double> averages(algorithms.size());
  check(rdpso_average_rank(table.data(), algorithms.size(), problems.size(), averages.data()));
  for (std::size_t a = 0; a < algorithms.size(); ++a) result.average_ranks[algorithms[a]] = averages[a];

  result.algorithms = algorithms;
  std::stable_sort(result.algorithms.begin(), result.algorithms.end(),
                   [&](const std::string& x, const std::string& y) {
                     return result.average_ranks.at(x) < result.average_ranks.at(y);
                   });

  CsvWriter rank_csv(plan.output_dir / "ranks.csv", "algorithm,problem,rank");
  for (const auto& p : problems) {
    for (const auto& a : algorithms) {
      rank_csv.field(a).field(p).field(static_cast<std::uint64_t>(result.ranks.at({a, p}))).end_row();
    }
  }
  for (const auto& a : result.algorithms) {
    rank_csv.field(a).field("average").field(result.average_ranks.at(a)).end_row();
  }
  rank_csv.close();

  std::size_t name_width = 9;
  for (const auto& a : algorithms) name_width = std::max(name_width, a.size());
  name_width += 2;
  constexpr std::size_t kCell = 30;
  std::ostringstream text;
  text << fixed_width("algorithm", name_width) << fixed_width("avg_rank", 10);
  for (const auto& p : problems) text << fixed_width(p, kCell);
  text << '\n';
  for (const auto& a : result.algorithms) {
    char avg[16];
    std::snprintf(avg, sizeof avg, "%.2f", result.average_ranks.at(a));
    text << fixed_width(a, name_width) << fixed_width(avg, 10);
    for (const auto& p : problems) {
      const auto& [mean, sd] = summaries.at({a, p});
      text << fixed_width(scientific(mean) + " (" + scientific(sd) + ") " +
                              std::to_string(result.ranks.at({a, p})),
                          kCell);
    }
    text << '\n';
  }
  result.table = text.str();
  // Drop the padding after the last column.
  for (std::size_t pos; (pos = result.table.find(" \n")) != std::string::npos;) {
    result.table.erase(pos, 1);
  }
  std::ofstream report_txt(plan.output_dir / "report.txt", std::ios::binary | std::ios::trunc);
  report_txt << result.table;
  if (!report_txt) throw std::runtime_error("cannot write " + (plan.output_dir / "report.txt").string());
  return result;
}

}  // namespace rdpso_cli
