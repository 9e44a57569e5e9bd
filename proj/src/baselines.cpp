#include "rdpso/baselines.hpp"

#include <cmath>

#include "rdpso/error.hpp"
#include "rdpso/swarm.hpp"

namespace rdpso {
namespace {

void canonical_iteration(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                         RandomSource& rng, double inertia, double scale) {
  for (std::size_t i = 0; i < state.particles(); ++i) {
    score_particle(state, i, evaluate);
    const std::size_t guide = cfg.topology == Topology::global
                                  ? state.gbest_index
                                  : best_in_neighborhood(state, i, Topology::ring);
    move_canonical(state, i, state.pbest(guide), inertia, scale, cfg.c1, cfg.c2, rng);
    settle_position(state, i, evaluate.problem());
  }
  finish_iteration(state);
}

}  // namespace

BaselineConfig BaselineConfig::defaults(BaselineVariant variant) {
  BaselineConfig cfg;
  cfg.variant = variant;
  switch (variant) {
    case BaselineVariant::original:
    case BaselineVariant::inertia:
      break;
    case BaselineVariant::spso:
      cfg.topology = Topology::ring;
      [[fallthrough]];
    case BaselineVariant::constriction:
      cfg.c1 = cfg.c2 = 2.05;
      cfg.chi = 0.7298;
      break;
  }
  return cfg;
}

double constriction_factor(double c1, double c2) {
  const double phi = c1 + c2;
  if (!(phi > 4.0)) {
    throw Error(ErrorKind::domain, "constriction factor needs c1 + c2 > 4, got " +
                                       std::to_string(phi));
  }
  return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

void move_canonical(SwarmState& state, std::size_t i, std::span<const double> guide,
                    double inertia, double scale, double c1, double c2, RandomSource& rng) {
  auto x = SwarmState::row(state.positions, i);
  auto v = SwarmState::row(state.velocities, i);
  const auto p = state.pbest(i);
  // The scale is distributed over the terms so that a constricted update and
  // the equivalent inertia update round identically.
  const double w = scale * inertia;
  const double a1 = scale * c1;
  const double a2 = scale * c2;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double r = rng.uniform();
    const double big_r = rng.uniform();
    const double raw = w * v[j] + a1 * r * (p[j] - x[j]) + a2 * big_r * (guide[j] - x[j]);
    v[j] = clamp_velocity(raw, state.v_max[j]);
    x[j] += v[j];
  }
}

void step_original(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                   RandomSource& rng) {
  canonical_iteration(state, cfg, evaluate, rng, 1.0, 1.0);
}

void step_inertia(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                  RandomSource& rng, std::size_t n_max) {
  const double w = schedule_value(cfg.w_schedule, state.iteration + 1, n_max);
  canonical_iteration(state, cfg, evaluate, rng, w, 1.0);
}

void step_constriction(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                       RandomSource& rng) {
  canonical_iteration(state, cfg, evaluate, rng, 1.0, cfg.chi);
}

void step_baseline(SwarmState& state, const BaselineConfig& cfg, Evaluator& evaluate,
                   RandomSource& rng, std::size_t n_max) {
  switch (cfg.variant) {
    case BaselineVariant::original:
      step_original(state, cfg, evaluate, rng);
      return;
    case BaselineVariant::inertia:
      step_inertia(state, cfg, evaluate, rng, n_max);
      return;
    case BaselineVariant::constriction:
    case BaselineVariant::spso:
      step_constriction(state, cfg, evaluate, rng);
      return;
  }
}

}  // namespace rdpso
