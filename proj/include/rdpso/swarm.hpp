#pragma once

#include <cstddef>
#include <vector>

#include "rdpso/core.hpp"
#include "rdpso/objectives.hpp"
#include "rdpso/random.hpp"

namespace rdpso {

// Half the search-range width in every dimension.
std::vector<double> default_v_max(const Problem& problem);

// Positions uniform in the init box, velocities uniform in [−v_max, v_max],
// pbest = position. Every initial position is scored once.
SwarmState initialize_swarm(const Problem& problem, std::size_t particles,
                            std::vector<double> v_max, RandomSource& rng, Evaluator& evaluate);

// Scores the current position of particle i (unless initialization already
// did) and refreshes its pbest and the gbest.
void score_particle(SwarmState& state, std::size_t i, Evaluator& evaluate);

// Clamps particle i into the search box when the problem enforces bounds.
void settle_position(SwarmState& state, std::size_t i, const Problem& problem);

// Closes an iteration: every position has moved and is unscored.
void finish_iteration(SwarmState& state);

// Scores any positions left unscored by the last iteration.
void score_remaining(SwarmState& state, Evaluator& evaluate);

}  // namespace rdpso
