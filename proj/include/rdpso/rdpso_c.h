/* C interface to the rdpso library.
 *
 * Objects are opaque handles created by *_create and released by *_destroy.
 * Every fallible call returns an rdpso_status; on failure a description of
 * the last error on the calling thread is available from rdpso_last_error().
 * Handles are not synchronized: use one handle per thread, or guard it.
 * Problems and optimizers are read-only during rdpso_optimizer_run and may be
 * shared by concurrent runs.
 */
#ifndef RDPSO_C_H
#define RDPSO_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RDPSO_BUILDING_LIBRARY)
#    define RDPSO_API __declspec(dllexport)
#  else
#    define RDPSO_API __declspec(dllimport)
#  endif
#else
#  define RDPSO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdpso_status {
  RDPSO_OK = 0,
  RDPSO_ERR_INPUT = 1,
  RDPSO_ERR_DIMENSION = 2,
  RDPSO_ERR_PARSE = 3,
  RDPSO_ERR_ORTHOGONALITY = 4,
  RDPSO_ERR_NUMERIC = 5,
  RDPSO_ERR_DOMAIN = 6,
  RDPSO_ERR_ACCURACY = 7,
  RDPSO_ERR_UNKNOWN_NAME = 8,
  RDPSO_ERR_IO = 9,
  RDPSO_ERR_INTERNAL = 10
} rdpso_status;

typedef enum rdpso_boundedness {
  RDPSO_CONVERGES = 0,
  RDPSO_BOUNDED_OSCILLATING = 1,
  RDPSO_DIVERGENT = 2
} rdpso_boundedness;

typedef struct rdpso_problem rdpso_problem;
typedef struct rdpso_optimizer rdpso_optimizer;
typedef struct rdpso_run_record rdpso_run_record;

RDPSO_API const char* rdpso_version(void);
RDPSO_API const char* rdpso_status_string(rdpso_status status);
/* Message of the most recent failure on this thread; empty if none. */
RDPSO_API const char* rdpso_last_error(void);
/* Redirects library warnings; NULL restores the stderr default. */
RDPSO_API void rdpso_set_warning_handler(void (*handler)(const char* message));

/* ---- problems ---------------------------------------------------------- */

RDPSO_API size_t rdpso_problem_name_count(void);
RDPSO_API const char* rdpso_problem_name(size_t index);

/* Registered benchmark with shift/rotation generated from instance_seed. */
RDPSO_API rdpso_status rdpso_problem_create(const char* name, size_t dimension,
                                            uint64_t instance_seed, rdpso_problem** out);
RDPSO_API void rdpso_problem_destroy(rdpso_problem* problem);

/* Replaces the generated shift (and rotation, when rotation_path is non-NULL)
 * with data files. */
RDPSO_API rdpso_status rdpso_problem_load_data(rdpso_problem* problem, const char* shift_path,
                                               const char* rotation_path);
RDPSO_API rdpso_status rdpso_problem_set_bias(rdpso_problem* problem, double bias);
RDPSO_API rdpso_status rdpso_problem_set_bounds_enforced(rdpso_problem* problem, int enforced);

RDPSO_API size_t rdpso_problem_dimension(const rdpso_problem* problem);
RDPSO_API double rdpso_problem_bias(const rdpso_problem* problem);
/* Noise-free objective value. */
RDPSO_API rdpso_status rdpso_problem_evaluate(const rdpso_problem* problem, const double* x,
                                              size_t n, double* value);

/* ---- optimizers -------------------------------------------------------- */

RDPSO_API size_t rdpso_algorithm_name_count(void);
RDPSO_API const char* rdpso_algorithm_name(size_t index);

/* Algorithm with default parameters, 40 particles and 5000 iterations. */
RDPSO_API rdpso_status rdpso_optimizer_create(const char* algorithm, rdpso_optimizer** out);
RDPSO_API void rdpso_optimizer_destroy(rdpso_optimizer* optimizer);

/* Keys: alpha, alpha_start, alpha_end, beta, c1, c2, w_start, w_end, chi,
 * vmax, particles, iterations. */
RDPSO_API rdpso_status rdpso_optimizer_set(rdpso_optimizer* optimizer, const char* key,
                                           double value);

RDPSO_API rdpso_status rdpso_optimizer_run(const rdpso_optimizer* optimizer,
                                           const rdpso_problem* problem, uint64_t seed,
                                           rdpso_run_record** out);

RDPSO_API void rdpso_run_record_destroy(rdpso_run_record* record);
RDPSO_API double rdpso_run_record_best_fitness(const rdpso_run_record* record);
RDPSO_API double rdpso_run_record_wall_ms(const rdpso_run_record* record);
RDPSO_API size_t rdpso_run_record_evaluations(const rdpso_run_record* record);
/* Best-so-far fitness per iteration; valid until the record is destroyed. */
RDPSO_API const double* rdpso_run_record_trajectory(const rdpso_run_record* record,
                                                    size_t* length);
RDPSO_API const double* rdpso_run_record_best_position(const rdpso_run_record* record,
                                                       size_t* length);

/* ---- single-particle dynamics ------------------------------------------ */

typedef struct rdpso_dynamics_config {
  double alpha;
  double beta;
  double c_point;
  double p_point;
  double x0;
  size_t steps;
  double overflow_cap;
} rdpso_dynamics_config;

/* alpha 0.5, beta 1.5, C 0.001, p 0, X0 1000, 5000 steps, cap 700. */
RDPSO_API rdpso_dynamics_config rdpso_dynamics_default_config(void);

/* Writes up to `capacity` ln-gap values; *length receives the number of
 * values produced (steps + 1, or fewer if diverged). */
RDPSO_API rdpso_status rdpso_simulate_particle(const rdpso_dynamics_config* config, uint64_t seed,
                                               double* log_gap, size_t capacity, size_t* length,
                                               int* diverged);

RDPSO_API rdpso_status rdpso_delta(double alpha, double beta, double* value, double* error);
RDPSO_API rdpso_status rdpso_rho_moments(double alpha, double beta, size_t n, double* mean,
                                         double* variance);
RDPSO_API rdpso_status rdpso_classify_boundedness(double alpha, double beta,
                                                  rdpso_boundedness* kind, double* delta,
                                                  double* delta_error, int* sufficient);
RDPSO_API const char* rdpso_boundedness_string(rdpso_boundedness kind);

typedef struct rdpso_boundedness_row {
  double alpha;
  double beta;
  double delta;
  double delta_error;
  rdpso_boundedness classification;
  double diverged_fraction;
} rdpso_boundedness_row;

/* `rows` must hold n_alpha * n_beta entries, alpha-major. `base` supplies C,
 * p, X0 and the cap (NULL = defaults); its alpha, beta and steps are ignored. */
RDPSO_API rdpso_status rdpso_boundedness_map(const double* alphas, size_t n_alpha,
                                             const double* betas, size_t n_beta, size_t reps,
                                             size_t steps, uint64_t seed,
                                             const rdpso_dynamics_config* base,
                                             rdpso_boundedness_row* rows);

/* ---- statistics -------------------------------------------------------- */

RDPSO_API rdpso_status rdpso_summarize(const double* values, size_t n, double* mean,
                                       double* std_dev);
RDPSO_API rdpso_status rdpso_unpaired_t(const double* a, size_t na, const double* b, size_t nb,
                                        double* t, double* p, int* significant);
/* samples[k] has sizes[k] values; ranks[k] receives the competition rank. */
RDPSO_API rdpso_status rdpso_rank_problem(const double* const* samples, const size_t* sizes,
                                          size_t count, int* ranks);
/* ranks is algorithms × problems row-major; a value <= 0 marks a missing cell. */
RDPSO_API rdpso_status rdpso_average_rank(const int* ranks, size_t algorithms, size_t problems,
                                          double* averages);

#ifdef __cplusplus
}
#endif

#endif /* RDPSO_C_H */
