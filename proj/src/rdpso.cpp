#include "rdpso/rdpso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "rdpso/swarm.hpp"

namespace rdpso {

RdpsoConfig RdpsoConfig::defaults(RdpsoVariant variant) {
  RdpsoConfig cfg;
  cfg.variant = variant;
  if (variant == RdpsoVariant::gbest_rp) cfg.alpha = Schedule::linear(0.6, 0.2);
  return cfg;
}

std::vector<std::string> RdpsoConfig::stability_warnings() const {
  std::vector<std::string> out;
  auto check_alpha = [&](double a) {
    if (!(a > 0.0 && a < 1.0)) {
      std::ostringstream msg;
      msg << "thermal coefficient " << a << " lies outside (0, 1)";
      out.push_back(msg.str());
    }
  };
  check_alpha(alpha.start_value);
  if (alpha.end_value != alpha.start_value) check_alpha(alpha.end_value);
  if (!(beta > 0.0 && beta < 2.0)) {
    std::ostringstream msg;
    msg << "drift coefficient " << beta << " lies outside (0, 2)";
    out.push_back(msg.str());
  }
  return out;
}

std::vector<double> mean_best(const SwarmState& state, std::size_t i, Topology topology) {
  // Averaged as offsets from the first member, so coincident pbests give
  // their common point exactly.
  auto average = [&](std::span<const std::size_t> members) {
    const auto first = state.pbest(members.front());
    std::vector<double> mean(first.begin(), first.end());
    const double count = static_cast<double>(members.size());
    for (std::size_t j = 0; j < mean.size(); ++j) {
      double offset = 0.0;
      for (std::size_t k : members) offset += state.pbest(k)[j] - first[j];
      mean[j] += offset / count;
    }
    return mean;
  };
  if (topology == Topology::global) {
    std::vector<std::size_t> all(state.particles());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return average(all);
  }
  const auto ring = ring_neighborhood(i, state.particles());
  return average(ring);
}

std::size_t random_pbest_index(const SwarmState& state, std::size_t i, Topology topology,
                               RandomSource& rng) {
  if (topology == Topology::global) return rng.index(state.particles());
  return ring_neighborhood(i, state.particles())[rng.index(3)];
}

std::vector<double> random_pbest(const SwarmState& state, std::size_t i, Topology topology,
                                 RandomSource& rng) {
  const auto p = state.pbest(random_pbest_index(state, i, topology, rng));
  return {p.begin(), p.end()};
}

double local_focus(double pbest, double guide, double c1, double c2, RandomSource& rng) {
  const double a = c1 * rng.uniform();
  const double b = c2 * rng.uniform();
  // Same convex combination written as a step from pbest toward the guide,
  // so equal endpoints are reproduced exactly and rounding stays in range.
  const double focus = pbest + (b / (a + b)) * (guide - pbest);
  return std::clamp(focus, std::min(pbest, guide), std::max(pbest, guide));
}

std::vector<double> local_focus(std::span<const double> pbest, std::span<const double> guide,
                                double c1, double c2, RandomSource& rng) {
  std::vector<double> focus(pbest.size());
  for (std::size_t j = 0; j < focus.size(); ++j) focus[j] = local_focus(pbest[j], guide[j], c1, c2, rng);
  return focus;
}

double rdpso_velocity(double x, double anchor, double focus, double alpha, double beta,
                      RandomSource& rng) {
  return alpha * std::abs(anchor - x) * rng.normal() + beta * (focus - x);
}

void rdpso_step(SwarmState& state, const RdpsoConfig& cfg, Evaluator& evaluate, RandomSource& rng,
                std::size_t n_max) {
  const double alpha = schedule_value(cfg.alpha, state.iteration + 1, n_max);
  const Topology topology = cfg.topology();
  const std::size_t m = state.particles();
  const std::size_t n = state.dimension();

  // The global mbest is shared, so it is stored once.
  const bool shared_anchor = topology == Topology::global && !cfg.uses_random_pbest();
  Matrix anchors(static_cast<Eigen::Index>(shared_anchor ? 1 : m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < static_cast<std::size_t>(anchors.rows()); ++i) {
    const std::vector<double> anchor = cfg.uses_random_pbest()
                                           ? random_pbest(state, i, topology, rng)
                                           : mean_best(state, i, topology);
    std::copy(anchor.begin(), anchor.end(), SwarmState::row(anchors, i).begin());
  }

  for (std::size_t i = 0; i < m; ++i) {
    score_particle(state, i, evaluate);
    const std::size_t guide_index = topology == Topology::global
                                        ? state.gbest_index
                                        : best_in_neighborhood(state, i, Topology::ring);
    const auto guide = state.pbest(guide_index);
    const auto p = state.pbest(i);
    const auto anchor = SwarmState::row(std::as_const(anchors), shared_anchor ? 0 : i);
    auto x = SwarmState::row(state.positions, i);
    auto v = SwarmState::row(state.velocities, i);
    for (std::size_t j = 0; j < n; ++j) {
      const double focus = local_focus(p[j], guide[j], cfg.c1, cfg.c2, rng);
      v[j] = clamp_velocity(rdpso_velocity(x[j], anchor[j], focus, alpha, cfg.beta, rng),
                            state.v_max[j]);
      x[j] += v[j];
    }
    settle_position(state, i, evaluate.problem());
  }
  finish_iteration(state);
}

}  // namespace rdpso
