#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdpso/core.hpp"
#include "rdpso/random.hpp"

namespace rdpso {

enum class BaseFunction {
  sphere,
  schwefel_1_2,
  elliptic,
  rosenbrock,
  rastrigin,
  griewank,
  ackley,
  weierstrass,
  scaffer_f6_expanded,
  griewank_rosenbrock,
};

// Untransformed benchmark formula. All have minimum 0; rosenbrock and
// griewank_rosenbrock take it at the all-ones point, the rest at the origin.
double evaluate_base(BaseFunction f, std::span<const double> z);

// Location of the base function's minimum in z-space.
std::vector<double> base_minimizer(BaseFunction f, std::size_t n);

struct Bounds {
  double lo;
  double hi;
};

class Problem {
 public:
  Problem(std::string name, BaseFunction f, std::size_t dimension, Bounds search, Bounds init);

  Problem& set_shift(std::vector<double> shift);
  // Throws Error(orthogonality) unless RᵀR = I within 1e-9.
  Problem& set_rotation(Matrix rotation);
  Problem& set_bias(double bias);
  // Multiplicative fitness noise (1 + scale·|N(0,1)|); 0 disables it.
  Problem& set_noise_scale(double scale);
  Problem& set_bounds_enforced(bool enforced);
  Problem& set_search_bounds(std::vector<Bounds> bounds);
  Problem& set_init_bounds(std::vector<Bounds> bounds);

  // rotation · (x − shift); missing parts act as identity / zero.
  std::vector<double> transform(std::span<const double> x) const;

  // base(transform(x)) + bias. A noisy problem draws its noise from `noise`;
  // without a source the noise-free value is returned.
  double evaluate(std::span<const double> x, RandomSource* noise = nullptr) const;

  // Point where evaluate() returns bias (noise aside).
  std::vector<double> optimum() const;

  const std::string& name() const { return name_; }
  BaseFunction base_function() const { return function_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<Bounds>& search_bounds() const { return search_; }
  const std::vector<Bounds>& init_bounds() const { return init_; }
  const std::optional<std::vector<double>>& shift() const { return shift_; }
  const std::optional<Matrix>& rotation() const { return rotation_; }
  double bias() const { return bias_; }
  double noise_scale() const { return noise_scale_; }
  bool bounds_enforced() const { return bounds_enforced_; }

 private:
  void check_dimension(std::size_t n, const char* what) const;

  std::string name_;
  BaseFunction function_;
  std::size_t dimension_;
  std::vector<Bounds> search_;
  std::vector<Bounds> init_;
  std::optional<std::vector<double>> shift_;
  std::optional<Matrix> rotation_;
  double bias_ = 0.0;
  double noise_scale_ = 0.0;
  bool bounds_enforced_ = false;
};

// Counts evaluations and carries the noise stream of one run.
class Evaluator {
 public:
  explicit Evaluator(const Problem& problem, RandomSource* noise = nullptr)
      : problem_(&problem), noise_(noise) {}

  double operator()(std::span<const double> x) {
    ++evaluations_;
    return problem_->evaluate(x, noise_);
  }

  const Problem& problem() const { return *problem_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  const Problem* problem_;
  RandomSource* noise_;
  std::size_t evaluations_ = 0;
};

// Haar-distributed orthogonal matrix from the QR factorization of a matrix of
// standard-normal draws.
Matrix random_rotation(std::size_t n, RandomSource& rng);

bool is_orthogonal(const Matrix& m, double tolerance = 1e-9);

// Whitespace-separated reals. Errors: io, parse, dimension, orthogonality.
std::vector<double> load_shift(const std::filesystem::path& path, std::size_t n);
Matrix load_rotation(const std::filesystem::path& path, std::size_t n);

struct ProblemData {
  std::vector<double> shift;
  std::optional<Matrix> rotation;
};
ProblemData load_problem_data(const std::filesystem::path& shift_path, std::size_t n,
                              const std::optional<std::filesystem::path>& rotation_path = {});

inline constexpr std::uint64_t kDefaultInstanceSeed = 2005;

// Registered benchmark names (f1_sphere, f9_rastrigin, ...).
std::span<const std::string_view> problem_names();

// Builds a registered benchmark. Shift and rotation are generated from
// `instance_seed`, so equal seeds give identical problem instances.
Problem make_problem(std::string_view name, std::size_t dimension,
                     std::uint64_t instance_seed = kDefaultInstanceSeed);

}  // namespace rdpso
