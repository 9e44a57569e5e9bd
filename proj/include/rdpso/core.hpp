#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rdpso {

// Particle-major storage: row i is particle i, so each row is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Parameter that is either held constant or interpolated linearly over the
// iteration index n in [0, n_max].
struct Schedule {
  enum class Kind { constant, linear };

  Kind kind = Kind::constant;
  double start_value = 0.0;
  double end_value = 0.0;

  static Schedule constant(double value) { return {Kind::constant, value, value}; }
  static Schedule linear(double start, double end) { return {Kind::linear, start, end}; }
};

// Throws Error(input) when n > n_max or n_max == 0.
double schedule_value(const Schedule& schedule, std::size_t n, std::size_t n_max);

// Throws Error(numeric) for non-finite v and Error(input) for v_max <= 0.
double clamp_velocity(double v, double v_max);

enum class Topology { global, ring };

// {i-1, i, i+1} modulo m. Requires m >= 3.
std::array<std::size_t, 3> ring_neighborhood(std::size_t i, std::size_t m);

struct SwarmState {
  Matrix positions;
  Matrix velocities;
  Matrix pbest_positions;
  Eigen::VectorXd pbest_fitness;
  std::size_t gbest_index = 0;
  std::size_t iteration = 0;

  // Per-dimension velocity bound.
  std::vector<double> v_max;
  // True while every current position has already been scored into the
  // pbest/gbest bookkeeping (right after initialization).
  bool positions_scored = false;

  std::size_t particles() const { return static_cast<std::size_t>(positions.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(positions.cols()); }

  std::span<const double> position(std::size_t i) const { return row(positions, i); }
  std::span<const double> pbest(std::size_t i) const { return row(pbest_positions, i); }
  std::span<const double> gbest() const { return row(pbest_positions, gbest_index); }
  double gbest_fitness() const { return pbest_fitness[static_cast<Eigen::Index>(gbest_index)]; }

  static std::span<const double> row(const Matrix& m, std::size_t i) {
    return {m.row(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(m.cols())};
  }
  static std::span<double> row(Matrix& m, std::size_t i) {
    return {m.row(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(m.cols())};
  }
};

// Empty m x n state with +infinity pbest fitness.
SwarmState make_state(std::size_t m, std::size_t n);

// Replaces pbest i when fx is strictly better. Non-finite fx never improves.
// Returns whether the pbest changed.
bool update_pbest(SwarmState& state, std::size_t i, std::span<const double> x, double fx);

// Re-points gbest_index after pbest i changed; equal fitness goes to the lower index.
void update_gbest(SwarmState& state, std::size_t i);

// Recomputes gbest_index from scratch.
void refresh_gbest(SwarmState& state);

// Argmin of pbest fitness over the whole swarm (global) or the ring
// neighborhood of i. Ties resolve to the lowest particle index.
std::size_t best_in_neighborhood(const SwarmState& state, std::size_t i, Topology topology);

}  // namespace rdpso
