#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rdpso/baselines.hpp"
#include "rdpso/objectives.hpp"
#include "rdpso/rdpso.hpp"

namespace rdpso {

struct Algorithm {
  std::string name;
  std::variant<BaselineConfig, RdpsoConfig> config;
};

// pso-original, pso-in, pso-co, spso, rdpso-gbest, rdpso-gbest-rp,
// rdpso-lbest, rdpso-lbest-rp.
std::span<const std::string_view> algorithm_names();

// Algorithm with its standard default parameters. Throws Error(unknown_name).
Algorithm make_algorithm(std::string_view name);

// Keys: alpha (constant α), alpha_start, alpha_end, beta, c1, c2, w_start,
// w_end, chi. Throws Error(input) for keys the algorithm does not use.
void set_parameter(Algorithm& algorithm, std::string_view key, double value);

struct SwarmSettings {
  std::size_t particles = 40;
  std::size_t iterations = 5000;
  std::optional<double> v_max;  // default: half the search width per dimension
};

struct RunRecord {
  std::uint64_t seed = 0;
  // Best-so-far fitness after initialization (index 0) and after every
  // iteration; length iterations + 1.
  std::vector<double> best_so_far;
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;
  double wall_ms = 0.0;
};

// Advances the swarm by one iteration of the given algorithm.
void step(SwarmState& state, const Algorithm& algorithm, Evaluator& evaluate, RandomSource& rng,
          std::size_t n_max);

// One seeded run. Motion draws come from SeededRandom(seed, kMotionStream),
// fitness noise from SeededRandom(seed, kNoiseStream).
RunRecord run(const Problem& problem, const Algorithm& algorithm, const SwarmSettings& settings,
              std::uint64_t seed);

}  // namespace rdpso
