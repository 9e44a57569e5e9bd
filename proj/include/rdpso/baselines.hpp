#pragma once

#include <cstddef>
#include <span>

#include "rdpso/core.hpp"
#include "rdpso/objectives.hpp"
#include "rdpso/random.hpp"

namespace rdpso {

enum class BaselineVariant { original, inertia, constriction, spso };

struct BaselineConfig {
  BaselineVariant variant = BaselineVariant::inertia;
  double c1 = 2.0;
  double c2 = 2.0;
  Schedule w_schedule = Schedule::linear(0.9, 0.4);  // inertia only
  double chi = 0.7298;                               // constriction and spso
  Topology topology = Topology::global;

  // Standard settings: inertia 0.9→0.4 with c1 = c2 = 2.0; constriction and
  // spso χ = 0.7298 with c1 = c2 = 2.05; spso on the ring.
  static BaselineConfig defaults(BaselineVariant variant);
};

// 2 / |2 − φ − sqrt(φ² − 4φ)| with φ = c1 + c2. Throws Error(domain) for φ <= 4.
double constriction_factor(double c1, double c2);

// One particle's canonical update, per dimension with fresh r, R ~ U(0,1):
//   V' = scale · [inertia·V + c1·r·(P − X) + c2·R·(guide − X)],  X' = X + clamp(V').
void move_canonical(SwarmState& state, std::size_t i, std::span<const double> guide,
                    double inertia, double scale, double c1, double c2, RandomSource& rng);

// One iteration of the sequential loop: score particle i, refresh pbest/gbest,
// then move it. n_max is the run length used by the inertia schedule.
void step_original(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                   RandomSource& rng);
void step_inertia(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                  RandomSource& rng, std::size_t n_max);
// Also serves spso: its ring topology swaps the gbest for the neighborhood best.
void step_constriction(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                       RandomSource& rng);

void step_baseline(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                   RandomSource& rng, std::size_t n_max);

}  // namespace rdpso
