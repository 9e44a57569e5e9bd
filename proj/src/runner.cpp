#include "rdpso/runner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <type_traits>

#include "rdpso/error.hpp"
#include "rdpso/swarm.hpp"

namespace rdpso {
namespace {

constexpr std::array<std::string_view, 8> kAlgorithmNames{
    "pso-original", "pso-in",      "pso-co",         "spso",
    "rdpso-gbest",  "rdpso-gbest-rp", "rdpso-lbest", "rdpso-lbest-rp",
};

[[noreturn]] void reject_key(const Algorithm& algorithm, std::string_view key) {
  throw Error(ErrorKind::input,
              "parameter '" + std::string(key) + "' does not apply to " + algorithm.name);
}

void set_baseline(Algorithm& algorithm, BaselineConfig& cfg, std::string_view key, double value) {
  if (key == "c1") {
    cfg.c1 = value;
  } else if (key == "c2") {
    cfg.c2 = value;
  } else if (key == "w_start" && cfg.variant == BaselineVariant::inertia) {
    cfg.w_schedule.start_value = value;
    cfg.w_schedule.kind = Schedule::Kind::linear;
  } else if (key == "w_end" && cfg.variant == BaselineVariant::inertia) {
    cfg.w_schedule.end_value = value;
    cfg.w_schedule.kind = Schedule::Kind::linear;
  } else if (key == "chi" && (cfg.variant == BaselineVariant::constriction ||
                              cfg.variant == BaselineVariant::spso)) {
    cfg.chi = value;
  } else {
    reject_key(algorithm, key);
  }
}

void set_rdpso(Algorithm& algorithm, RdpsoConfig& cfg, std::string_view key, double value) {
  if (key == "alpha") {
    cfg.alpha = Schedule::constant(value);
  } else if (key == "alpha_start") {
    cfg.alpha.start_value = value;
    cfg.alpha.kind = cfg.alpha.start_value == cfg.alpha.end_value ? Schedule::Kind::constant
                                                                  : Schedule::Kind::linear;
  } else if (key == "alpha_end") {
    cfg.alpha.end_value = value;
    cfg.alpha.kind = cfg.alpha.start_value == cfg.alpha.end_value ? Schedule::Kind::constant
                                                                  : Schedule::Kind::linear;
  } else if (key == "beta") {
    cfg.beta = value;
  } else if (key == "c1") {
    cfg.c1 = value;
  } else if (key == "c2") {
    cfg.c2 = value;
  } else {
    reject_key(algorithm, key);
  }
}

}  // namespace

std::span<const std::string_view> algorithm_names() { return kAlgorithmNames; }

Algorithm make_algorithm(std::string_view name) {
  Algorithm a{std::string(name), BaselineConfig{}};
  if (name == "pso-original") {
    a.config = BaselineConfig::defaults(BaselineVariant::original);
  } else if (name == "pso-in") {
    a.config = BaselineConfig::defaults(BaselineVariant::inertia);
  } else if (name == "pso-co") {
    a.config = BaselineConfig::defaults(BaselineVariant::constriction);
  } else if (name == "spso") {
    a.config = BaselineConfig::defaults(BaselineVariant::spso);
  } else if (name == "rdpso-gbest") {
    a.config = RdpsoConfig::defaults(RdpsoVariant::gbest);
  } else if (name == "rdpso-gbest-rp") {
    a.config = RdpsoConfig::defaults(RdpsoVariant::gbest_rp);
  } else if (name == "rdpso-lbest") {
    a.config = RdpsoConfig::defaults(RdpsoVariant::lbest);
  } else if (name == "rdpso-lbest-rp") {
    a.config = RdpsoConfig::defaults(RdpsoVariant::lbest_rp);
  } else {
    std::string known;
    for (std::string_view n : kAlgorithmNames) known += (known.empty() ? "" : ", ") + std::string(n);
    throw Error(ErrorKind::unknown_name,
                "unknown algorithm '" + std::string(name) + "'; valid names: " + known);
  }
  return a;
}

void set_parameter(Algorithm& algorithm, std::string_view key, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::numeric, "parameter '" + std::string(key) + "' must be finite");
  }
  std::visit(
      [&](auto& cfg) {
        if constexpr (std::is_same_v<std::decay_t<decltype(cfg)>, BaselineConfig>) {
          set_baseline(algorithm, cfg, key, value);
        } else {
          set_rdpso(algorithm, cfg, key, value);
        }
      },
      algorithm.config);
}

void step(SwarmState& state, const Algorithm& algorithm, Evaluator& evaluate, RandomSource& rng,
          std::size_t n_max) {
  std::visit(
      [&](const auto& cfg) {
        if constexpr (std::is_same_v<std::decay_t<decltype(cfg)>, BaselineConfig>) {
          step_baseline(state, cfg, evaluate, rng, n_max);
        } else {
          rdpso_step(state, cfg, evaluate, rng, n_max);
        }
      },
      algorithm.config);
}

RunRecord run(const Problem& problem, const Algorithm& algorithm, const SwarmSettings& settings,
              std::uint64_t seed) {
  if (const auto* rd = std::get_if<RdpsoConfig>(&algorithm.config)) {
    for (const std::string& w : rd->stability_warnings()) warn(algorithm.name + ": " + w);
  }
  const auto t0 = std::chrono::steady_clock::now();

  SeededRandom rng(seed, kMotionStream);
  SeededRandom noise(seed, kNoiseStream);
  Evaluator evaluate(problem, &noise);

  std::vector<double> v_max = default_v_max(problem);
  if (settings.v_max) std::fill(v_max.begin(), v_max.end(), *settings.v_max);
  SwarmState state = initialize_swarm(problem, settings.particles, std::move(v_max), rng, evaluate);

  RunRecord record;
  record.seed = seed;
  record.best_so_far.reserve(settings.iterations + 1);
  record.best_so_far.push_back(state.gbest_fitness());
  for (std::size_t n = 0; n < settings.iterations; ++n) {
    step(state, algorithm, evaluate, rng, settings.iterations);
    if (n + 1 == settings.iterations) score_remaining(state, evaluate);
    record.best_so_far.push_back(state.gbest_fitness());
  }

  const auto best = state.gbest();
  record.best_position.assign(best.begin(), best.end());
  record.best_fitness = state.gbest_fitness();
  record.evaluations = evaluate.evaluations();
  record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

}  // namespace rdpso
