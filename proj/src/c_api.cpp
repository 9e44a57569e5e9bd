#include "rdpso/rdpso_c.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "rdpso/dynamics.hpp"
#include "rdpso/error.hpp"
#include "rdpso/objectives.hpp"
#include "rdpso/runner.hpp"
#include "rdpso/stats.hpp"

struct rdpso_problem {
  rdpso::Problem problem;
};

struct rdpso_optimizer {
  rdpso::Algorithm algorithm;
  rdpso::SwarmSettings settings;
};

struct rdpso_run_record {
  rdpso::RunRecord record;
};

namespace {

thread_local std::string g_last_error;

rdpso_status to_status(rdpso::ErrorKind kind) {
  using rdpso::ErrorKind;
  switch (kind) {
    case ErrorKind::input:
      return RDPSO_ERR_INPUT;
    case ErrorKind::dimension:
      return RDPSO_ERR_DIMENSION;
    case ErrorKind::parse:
      return RDPSO_ERR_PARSE;
    case ErrorKind::orthogonality:
      return RDPSO_ERR_ORTHOGONALITY;
    case ErrorKind::numeric:
      return RDPSO_ERR_NUMERIC;
    case ErrorKind::domain:
      return RDPSO_ERR_DOMAIN;
    case ErrorKind::accuracy:
      return RDPSO_ERR_ACCURACY;
    case ErrorKind::unknown_name:
      return RDPSO_ERR_UNKNOWN_NAME;
    case ErrorKind::io:
      return RDPSO_ERR_IO;
  }
  return RDPSO_ERR_INTERNAL;
}

rdpso_status fail(rdpso_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, converting exceptions into status codes.
template <class Fn>
rdpso_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return RDPSO_OK;
  } catch (const rdpso::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RDPSO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDPSO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RDPSO_ERR_INTERNAL, "unknown exception");
  }
}

#define RDPSO_REQUIRE(cond, what) \
  if (!(cond)) return fail(RDPSO_ERR_INPUT, what)

rdpso::Boundedness from_c(rdpso_boundedness b) {
  switch (b) {
    case RDPSO_CONVERGES:
      return rdpso::Boundedness::converges;
    case RDPSO_DIVERGENT:
      return rdpso::Boundedness::divergent;
    case RDPSO_BOUNDED_OSCILLATING:
      break;
  }
  return rdpso::Boundedness::bounded_oscillating;
}

rdpso_boundedness to_c(rdpso::Boundedness b) {
  switch (b) {
    case rdpso::Boundedness::converges:
      return RDPSO_CONVERGES;
    case rdpso::Boundedness::divergent:
      return RDPSO_DIVERGENT;
    case rdpso::Boundedness::bounded_oscillating:
      break;
  }
  return RDPSO_BOUNDED_OSCILLATING;
}

rdpso::DynamicsConfig from_c(const rdpso_dynamics_config& c) {
  return {c.alpha, c.beta, c.c_point, c.p_point, c.x0, c.steps, c.overflow_cap};
}

std::size_t as_count(double value, const char* key) {
  if (!(value >= 0.0) || value != static_cast<double>(static_cast<std::size_t>(value))) {
    throw rdpso::Error(rdpso::ErrorKind::input,
                       std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

extern "C" {

const char* rdpso_version(void) { return "1.0.0"; }

const char* rdpso_status_string(rdpso_status status) {
  switch (status) {
    case RDPSO_OK:
      return "ok";
    case RDPSO_ERR_INPUT:
      return "invalid input";
    case RDPSO_ERR_DIMENSION:
      return "dimension mismatch";
    case RDPSO_ERR_PARSE:
      return "parse error";
    case RDPSO_ERR_ORTHOGONALITY:
      return "matrix not orthogonal";
    case RDPSO_ERR_NUMERIC:
      return "numeric error";
    case RDPSO_ERR_DOMAIN:
      return "domain error";
    case RDPSO_ERR_ACCURACY:
      return "accuracy not reached";
    case RDPSO_ERR_UNKNOWN_NAME:
      return "unknown name";
    case RDPSO_ERR_IO:
      return "i/o error";
    case RDPSO_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* rdpso_last_error(void) { return g_last_error.c_str(); }

void rdpso_set_warning_handler(void (*handler)(const char* message)) {
  rdpso::set_warning_handler(handler);
}

size_t rdpso_problem_name_count(void) { return rdpso::problem_names().size(); }

const char* rdpso_problem_name(size_t index) {
  const auto names = rdpso::problem_names();
  // Registry names are string literals, so data() is NUL-terminated.
  return index < names.size() ? names[index].data() : nullptr;
}

rdpso_status rdpso_problem_create(const char* name, size_t dimension, uint64_t instance_seed,
                                  rdpso_problem** out) {
  RDPSO_REQUIRE(name && out, "rdpso_problem_create: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new rdpso_problem{rdpso::make_problem(name, dimension, instance_seed)};
  });
}

void rdpso_problem_destroy(rdpso_problem* problem) { delete problem; }

rdpso_status rdpso_problem_load_data(rdpso_problem* problem, const char* shift_path,
                                     const char* rotation_path) {
  RDPSO_REQUIRE(problem && shift_path, "rdpso_problem_load_data: null argument");
  return guarded([&] {
    std::optional<std::filesystem::path> rot;
    if (rotation_path) rot = rotation_path;
    rdpso::ProblemData data =
        rdpso::load_problem_data(shift_path, problem->problem.dimension(), rot);
    problem->problem.set_shift(std::move(data.shift));
    if (data.rotation) problem->problem.set_rotation(std::move(*data.rotation));
  });
}

rdpso_status rdpso_problem_set_bias(rdpso_problem* problem, double bias) {
  RDPSO_REQUIRE(problem, "rdpso_problem_set_bias: null problem");
  return guarded([&] { problem->problem.set_bias(bias); });
}

rdpso_status rdpso_problem_set_bounds_enforced(rdpso_problem* problem, int enforced) {
  RDPSO_REQUIRE(problem, "rdpso_problem_set_bounds_enforced: null problem");
  return guarded([&] { problem->problem.set_bounds_enforced(enforced != 0); });
}

size_t rdpso_problem_dimension(const rdpso_problem* problem) {
  return problem ? problem->problem.dimension() : 0;
}

double rdpso_problem_bias(const rdpso_problem* problem) {
  return problem ? problem->problem.bias() : 0.0;
}

rdpso_status rdpso_problem_evaluate(const rdpso_problem* problem, const double* x, size_t n,
                                    double* value) {
  RDPSO_REQUIRE(problem && x && value, "rdpso_problem_evaluate: null argument");
  return guarded([&] { *value = problem->problem.evaluate({x, n}); });
}

size_t rdpso_algorithm_name_count(void) { return rdpso::algorithm_names().size(); }

const char* rdpso_algorithm_name(size_t index) {
  const auto names = rdpso::algorithm_names();
  return index < names.size() ? names[index].data() : nullptr;
}

rdpso_status rdpso_optimizer_create(const char* algorithm, rdpso_optimizer** out) {
  RDPSO_REQUIRE(algorithm && out, "rdpso_optimizer_create: null argument");
  *out = nullptr;
  return guarded([&] { *out = new rdpso_optimizer{rdpso::make_algorithm(algorithm), {}}; });
}

void rdpso_optimizer_destroy(rdpso_optimizer* optimizer) { delete optimizer; }

rdpso_status rdpso_optimizer_set(rdpso_optimizer* optimizer, const char* key, double value) {
  RDPSO_REQUIRE(optimizer && key, "rdpso_optimizer_set: null argument");
  return guarded([&] {
    const std::string k = key;
    if (k == "particles") {
      const std::size_t particles = as_count(value, key);
      if (particles == 0) throw rdpso::Error(rdpso::ErrorKind::input, "particles must be >= 1");
      optimizer->settings.particles = particles;
    } else if (k == "iterations") {
      optimizer->settings.iterations = as_count(value, key);
    } else if (k == "vmax") {
      if (!(value > 0.0)) throw rdpso::Error(rdpso::ErrorKind::input, "vmax must be positive");
      optimizer->settings.v_max = value;
    } else {
      rdpso::set_parameter(optimizer->algorithm, k, value);
    }
  });
}

rdpso_status rdpso_optimizer_run(const rdpso_optimizer* optimizer, const rdpso_problem* problem,
                                 uint64_t seed, rdpso_run_record** out) {
  RDPSO_REQUIRE(optimizer && problem && out, "rdpso_optimizer_run: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new rdpso_run_record{
        rdpso::run(problem->problem, optimizer->algorithm, optimizer->settings, seed)};
  });
}

void rdpso_run_record_destroy(rdpso_run_record* record) { delete record; }

double rdpso_run_record_best_fitness(const rdpso_run_record* record) {
  return record ? record->record.best_fitness : 0.0;
}

double rdpso_run_record_wall_ms(const rdpso_run_record* record) {
  return record ? record->record.wall_ms : 0.0;
}

size_t rdpso_run_record_evaluations(const rdpso_run_record* record) {
  return record ? record->record.evaluations : 0;
}

const double* rdpso_run_record_trajectory(const rdpso_run_record* record, size_t* length) {
  if (!record) {
    if (length) *length = 0;
    return nullptr;
  }
  if (length) *length = record->record.best_so_far.size();
  return record->record.best_so_far.data();
}

const double* rdpso_run_record_best_position(const rdpso_run_record* record, size_t* length) {
  if (!record) {
    if (length) *length = 0;
    return nullptr;
  }
  if (length) *length = record->record.best_position.size();
  return record->record.best_position.data();
}

rdpso_dynamics_config rdpso_dynamics_default_config(void) {
  const rdpso::DynamicsConfig d;
  return {d.alpha, d.beta, d.c_point, d.p_point, d.x0, d.steps, d.overflow_cap};
}

rdpso_status rdpso_simulate_particle(const rdpso_dynamics_config* config, uint64_t seed,
                                     double* log_gap, size_t capacity, size_t* length,
                                     int* diverged) {
  RDPSO_REQUIRE(config, "rdpso_simulate_particle: null config");
  RDPSO_REQUIRE(log_gap || capacity == 0, "rdpso_simulate_particle: null output buffer");
  return guarded([&] {
    const rdpso::ParticleTrajectory traj = rdpso::simulate_particle(from_c(*config), seed);
    std::copy_n(traj.log_gap.begin(), std::min(capacity, traj.log_gap.size()), log_gap);
    if (length) *length = traj.log_gap.size();
    if (diverged) *diverged = traj.diverged ? 1 : 0;
  });
}

rdpso_status rdpso_delta(double alpha, double beta, double* value, double* error) {
  RDPSO_REQUIRE(value, "rdpso_delta: null output");
  return guarded([&] {
    const rdpso::DeltaEstimate d = rdpso::delta(alpha, beta);
    *value = d.value;
    if (error) *error = d.error;
  });
}

rdpso_status rdpso_rho_moments(double alpha, double beta, size_t n, double* mean,
                               double* variance) {
  RDPSO_REQUIRE(mean && variance, "rdpso_rho_moments: null output");
  return guarded([&] {
    const rdpso::RhoMoments m = rdpso::rho_moments(alpha, beta, n);
    *mean = m.mean;
    *variance = m.variance;
  });
}

rdpso_status rdpso_classify_boundedness(double alpha, double beta, rdpso_boundedness* kind,
                                        double* delta, double* delta_error, int* sufficient) {
  RDPSO_REQUIRE(kind, "rdpso_classify_boundedness: null output");
  return guarded([&] {
    const rdpso::BoundednessClass c = rdpso::classify_boundedness(alpha, beta);
    *kind = to_c(c.kind);
    if (delta) *delta = c.delta.value;
    if (delta_error) *delta_error = c.delta.error;
    if (sufficient) *sufficient = c.sufficient_condition ? 1 : 0;
  });
}

const char* rdpso_boundedness_string(rdpso_boundedness kind) {
  return rdpso::to_string(from_c(kind));
}

rdpso_status rdpso_boundedness_map(const double* alphas, size_t n_alpha, const double* betas,
                                   size_t n_beta, size_t reps, size_t steps, uint64_t seed,
                                   const rdpso_dynamics_config* base,
                                   rdpso_boundedness_row* rows) {
  RDPSO_REQUIRE(alphas && betas && rows, "rdpso_boundedness_map: null argument");
  return guarded([&] {
    const rdpso::DynamicsConfig cfg = base ? from_c(*base) : rdpso::DynamicsConfig{};
    const auto map = rdpso::boundedness_map({alphas, n_alpha}, {betas, n_beta}, reps, steps, seed,
                                            cfg);
    for (std::size_t k = 0; k < map.size(); ++k) {
      const auto& r = map[k];
      rows[k] = {r.alpha, r.beta, r.delta, r.delta_error, to_c(r.classification),
                 r.diverged_fraction};
    }
  });
}

rdpso_status rdpso_summarize(const double* values, size_t n, double* mean, double* std_dev) {
  RDPSO_REQUIRE(values && mean && std_dev, "rdpso_summarize: null argument");
  RDPSO_REQUIRE(n >= 2, "rdpso_summarize: standard deviation needs at least 2 values");
  return guarded([&] {
    const rdpso::Summary s = rdpso::summarize({values, n});
    *mean = s.mean;
    *std_dev = s.std;
  });
}

rdpso_status rdpso_unpaired_t(const double* a, size_t na, const double* b, size_t nb, double* t,
                              double* p, int* significant) {
  RDPSO_REQUIRE(a && b && t && p, "rdpso_unpaired_t: null argument");
  return guarded([&] {
    const rdpso::TTest test = rdpso::unpaired_t({a, na}, {b, nb});
    *t = test.t;
    *p = test.p;
    if (significant) *significant = test.significant ? 1 : 0;
  });
}

rdpso_status rdpso_rank_problem(const double* const* samples, const size_t* sizes, size_t count,
                                int* ranks) {
  RDPSO_REQUIRE(samples && sizes && ranks, "rdpso_rank_problem: null argument");
  return guarded([&] {
    std::vector<rdpso::ResultSample> in(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!samples[k]) throw rdpso::Error(rdpso::ErrorKind::input, "null sample");
      in[k].algorithm = std::to_string(k);
      in[k].final_bests.assign(samples[k], samples[k] + sizes[k]);
    }
    const rdpso::ProblemRanking r = rdpso::rank_problem(in);
    std::copy(r.ranks.begin(), r.ranks.end(), ranks);
  });
}

rdpso_status rdpso_average_rank(const int* ranks, size_t algorithms, size_t problems,
                                double* averages) {
  RDPSO_REQUIRE(ranks && averages, "rdpso_average_rank: null argument");
  RDPSO_REQUIRE(algorithms > 0 && problems > 0, "rdpso_average_rank: empty table");
  return guarded([&] {
    rdpso::RankTable table;
    std::string missing;
    for (std::size_t a = 0; a < algorithms; ++a) {
      for (std::size_t p = 0; p < problems; ++p) {
        const int r = ranks[a * problems + p];
        if (r <= 0) {
          missing += (missing.empty() ? "" : ", ") + std::to_string(a) + "/" + std::to_string(p);
        } else {
          // Zero-padded keys keep the map order equal to the index order.
          char akey[32];
          char pkey[32];
          std::snprintf(akey, sizeof akey, "%020zu", a);
          std::snprintf(pkey, sizeof pkey, "%020zu", p);
          table.set(akey, pkey, r);
        }
      }
    }
    if (!missing.empty()) {
      throw rdpso::Error(rdpso::ErrorKind::input, "average_rank: missing cells: " + missing);
    }
    const auto avg = rdpso::average_rank(table);
    std::size_t k = 0;
    for (const auto& [name, value] : avg) averages[k++] = value;
  });
}

}  // extern "C"
