#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rdpso/core.hpp"
#include "rdpso/objectives.hpp"
#include "rdpso/random.hpp"

namespace rdpso {

// Topology × random-component center:
//   gbest     global, mbest          gbest_rp  global, random pbest
//   lbest     ring,   ring mbest     lbest_rp  ring,   random ring pbest
enum class RdpsoVariant { gbest, gbest_rp, lbest, lbest_rp };

struct RdpsoConfig {
  RdpsoVariant variant = RdpsoVariant::gbest;
  Schedule alpha = Schedule::linear(0.9, 0.3);  // thermal coefficient
  double beta = 1.45;                           // drift coefficient
  // Weights of pbest and guide inside the local focus.
  double c1 = 1.0;
  double c2 = 1.0;

  // gbest_rp runs α 0.6→0.2; the others 0.9→0.3. β = 1.45 for all four.
  static RdpsoConfig defaults(RdpsoVariant variant);

  Topology topology() const {
    return variant == RdpsoVariant::lbest || variant == RdpsoVariant::lbest_rp ? Topology::ring
                                                                              : Topology::global;
  }
  bool uses_random_pbest() const {
    return variant == RdpsoVariant::gbest_rp || variant == RdpsoVariant::lbest_rp;
  }

  // Messages for α outside (0,1) or β outside (0,2). Such values are allowed.
  std::vector<std::string> stability_warnings() const;
};

// Coordinate-wise mean of the pbest positions of the whole swarm (global) or
// of {i−1, i, i+1} (ring).
std::vector<double> mean_best(const SwarmState& state, std::size_t i, Topology topology);

// Index of the particle whose pbest serves as the random center: uniform over
// the swarm (global) or the ring neighborhood of i. One uniform draw.
std::size_t random_pbest_index(const SwarmState& state, std::size_t i, Topology topology,
                               RandomSource& rng);
std::vector<double> random_pbest(const SwarmState& state, std::size_t i, Topology topology,
                                 RandomSource& rng);

// (c1·r·p + c2·R·guide) / (c1·r + c2·R) with fresh r, R ~ U(0,1).
double local_focus(double pbest, double guide, double c1, double c2, RandomSource& rng);
std::vector<double> local_focus(std::span<const double> pbest, std::span<const double> guide,
                                double c1, double c2, RandomSource& rng);

// α·|anchor − x|·φ + β·(focus − x) with fresh φ ~ N(0,1). Unclamped.
double rdpso_velocity(double x, double anchor, double focus, double alpha, double beta,
                      RandomSource& rng);

// One iteration. Anchors (mbest or random pbest) are fixed for every particle
// before the particle loop; then each particle is scored, its pbest and the
// gbest refreshed, and it moves dimension by dimension.
void rdpso_step(SwarmState& state, const RdpsoConfig& cfg, Evaluator& evaluate, RandomSource& rng,
                std::size_t n_max);

}  // namespace rdpso
