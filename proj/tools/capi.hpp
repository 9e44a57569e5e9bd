#pragma once

// RAII and exception wrappers over the rdpso C interface.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdpso/rdpso_c.h"

namespace rdpso_cli {

class ApiError : public std::runtime_error {
 public:
  ApiError(rdpso_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  rdpso_status status() const { return status_; }

 private:
  rdpso_status status_;
};

inline void check(rdpso_status status) {
  if (status == RDPSO_OK) return;
  std::string msg = rdpso_last_error();
  if (msg.empty()) msg = rdpso_status_string(status);
  throw ApiError(status, msg);
}

struct ProblemDeleter {
  void operator()(rdpso_problem* p) const { rdpso_problem_destroy(p); }
};
struct OptimizerDeleter {
  void operator()(rdpso_optimizer* o) const { rdpso_optimizer_destroy(o); }
};
struct RecordDeleter {
  void operator()(rdpso_run_record* r) const { rdpso_run_record_destroy(r); }
};

using ProblemPtr = std::unique_ptr<rdpso_problem, ProblemDeleter>;
using OptimizerPtr = std::unique_ptr<rdpso_optimizer, OptimizerDeleter>;
using RecordPtr = std::unique_ptr<rdpso_run_record, RecordDeleter>;

inline ProblemPtr make_problem(const std::string& name, std::size_t dimension, std::uint64_t seed) {
  rdpso_problem* p = nullptr;
  check(rdpso_problem_create(name.c_str(), dimension, seed, &p));
  return ProblemPtr(p);
}

inline OptimizerPtr make_optimizer(const std::string& name) {
  rdpso_optimizer* o = nullptr;
  check(rdpso_optimizer_create(name.c_str(), &o));
  return OptimizerPtr(o);
}

inline RecordPtr run(const rdpso_optimizer* o, const rdpso_problem* p, std::uint64_t seed) {
  rdpso_run_record* r = nullptr;
  check(rdpso_optimizer_run(o, p, seed, &r));
  return RecordPtr(r);
}

inline std::span<const double> trajectory(const rdpso_run_record* r) {
  std::size_t n = 0;
  const double* data = rdpso_run_record_trajectory(r, &n);
  return {data, n};
}

inline std::vector<std::string> algorithm_names() {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < rdpso_algorithm_name_count(); ++k) out.emplace_back(rdpso_algorithm_name(k));
  return out;
}

inline std::vector<std::string> problem_names() {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < rdpso_problem_name_count(); ++k) out.emplace_back(rdpso_problem_name(k));
  return out;
}

}  // namespace rdpso_cli
