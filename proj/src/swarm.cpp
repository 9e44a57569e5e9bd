#include "rdpso/swarm.hpp"

#include <algorithm>
#include <cmath>

#include "rdpso/error.hpp"

namespace rdpso {

std::vector<double> default_v_max(const Problem& problem) {
  std::vector<double> v_max;
  v_max.reserve(problem.dimension());
  for (const Bounds& b : problem.search_bounds()) v_max.push_back(0.5 * (b.hi - b.lo));
  return v_max;
}

SwarmState initialize_swarm(const Problem& problem, std::size_t particles,
                            std::vector<double> v_max, RandomSource& rng, Evaluator& evaluate) {
  const std::size_t n = problem.dimension();
  if (particles == 0) throw Error(ErrorKind::input, "swarm needs at least one particle");
  if (v_max.size() != n) throw Error(ErrorKind::dimension, "v_max length differs from dimension");
  for (double v : v_max) {
    if (!(v > 0.0)) throw Error(ErrorKind::input, "v_max must be positive");
  }

  SwarmState state = make_state(particles, n);
  state.v_max = std::move(v_max);
  const auto& init = problem.init_bounds();
  for (std::size_t i = 0; i < particles; ++i) {
    auto x = SwarmState::row(state.positions, i);
    auto v = SwarmState::row(state.velocities, i);
    for (std::size_t j = 0; j < n; ++j) x[j] = init[j].lo + (init[j].hi - init[j].lo) * rng.uniform();
    for (std::size_t j = 0; j < n; ++j) v[j] = (2.0 * rng.uniform() - 1.0) * state.v_max[j];
  }
  state.pbest_positions = state.positions;
  for (std::size_t i = 0; i < particles; ++i) {
    // Non-finite fitness stays +infinity.
    const double fx = evaluate(state.position(i));
    if (std::isfinite(fx)) state.pbest_fitness[static_cast<Eigen::Index>(i)] = fx;
  }
  refresh_gbest(state);
  state.positions_scored = true;
  return state;
}

void score_particle(SwarmState& state, std::size_t i, Evaluator& evaluate) {
  if (state.positions_scored) return;
  const double fx = evaluate(state.position(i));
  if (update_pbest(state, i, state.position(i), fx)) update_gbest(state, i);
}

void settle_position(SwarmState& state, std::size_t i, const Problem& problem) {
  if (!problem.bounds_enforced()) return;
  auto x = SwarmState::row(state.positions, i);
  const auto& bounds = problem.search_bounds();
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], bounds[j].lo, bounds[j].hi);
}

void finish_iteration(SwarmState& state) {
  state.positions_scored = false;
  ++state.iteration;
}

void score_remaining(SwarmState& state, Evaluator& evaluate) {
  if (state.positions_scored) return;
  for (std::size_t i = 0; i < state.particles(); ++i) score_particle(state, i, evaluate);
  state.positions_scored = true;
}

}  // namespace rdpso
