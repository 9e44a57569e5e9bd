#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rdpso/rdpso.hpp"
#include "rdpso/runner.hpp"
#include "rdpso/error.hpp"
#include "rdpso/swarm.hpp"
#include "test_support.hpp"

using namespace rdpso;
using rdpso::testing::ScriptedRandom;

namespace {

SwarmState with_pbests(const std::vector<std::vector<double>>& rows) {
  SwarmState s = make_state(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      s.pbest_positions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    s.pbest_fitness[static_cast<Eigen::Index>(i)] = static_cast<double>(i);
  }
  s.positions = s.pbest_positions;
  return s;
}

SwarmState random_swarm(const Problem& problem, std::size_t m, std::uint64_t seed) {
  SeededRandom rng(seed);
  Evaluator eval(problem);
  return initialize_swarm(problem, m, default_v_max(problem), rng, eval);
}

}  // namespace

TEST_CASE("mean best") {
  const SwarmState same = with_pbests({{1.5, -2}, {1.5, -2}, {1.5, -2}});
  CHECK(mean_best(same, 0, Topology::global) == std::vector<double>{1.5, -2});
  CHECK(mean_best(same, 1, Topology::ring) == std::vector<double>{1.5, -2});

  CHECK(mean_best(with_pbests({{0, 0}, {2, 4}}), 0, Topology::global) ==
        std::vector<double>{1, 2});

  const SwarmState ring = with_pbests({{3}, {6}, {100}, {0}});
  CHECK(mean_best(ring, 0, Topology::ring) == std::vector<double>{3});
  CHECK(mean_best(ring, 2, Topology::ring)[0] == doctest::Approx(106.0 / 3.0));
}

TEST_CASE("random pbest selection frequency and expectation") {
  const SwarmState s = with_pbests({{1, 10}, {2, -3}, {5, 0}, {-4, 7}, {9, 1}});
  SeededRandom rng(17);
  const int draws = 100000;
  std::vector<int> counts(5, 0);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 0; k < draws; ++k) {
    const std::size_t idx = random_pbest_index(s, 0, Topology::global, rng);
    ++counts[idx];
    xs.push_back(s.pbest_positions(static_cast<Eigen::Index>(idx), 0));
    ys.push_back(s.pbest_positions(static_cast<Eigen::Index>(idx), 1));
  }
  for (int c : counts) CHECK(std::abs(c / double(draws) - 0.2) <= 0.01);
  const auto mean = mean_best(s, 0, Topology::global);
  const auto mx = rdpso::testing::mean_and_stderr(xs);
  const auto my = rdpso::testing::mean_and_stderr(ys);
  CHECK(std::abs(mx.mean - mean[0]) <= 3 * mx.stderr_);
  CHECK(std::abs(my.mean - mean[1]) <= 3 * my.stderr_);

  const SwarmState same = with_pbests({{2, 2}, {2, 2}, {2, 2}});
  CHECK(random_pbest(same, 1, Topology::global, rng) == std::vector<double>{2, 2});
}

TEST_CASE("ring random pbest stays in the neighborhood") {
  const SwarmState s = with_pbests({{0}, {1}, {2}, {3}, {4}, {5}});
  SeededRandom rng(5);
  std::vector<int> counts(6, 0);
  for (int k = 0; k < 30000; ++k) ++counts[random_pbest_index(s, 0, Topology::ring, rng)];
  CHECK(counts[2] == 0);
  CHECK(counts[3] == 0);
  CHECK(counts[4] == 0);
  for (int i : {5, 0, 1}) CHECK(std::abs(counts[i] / 30000.0 - 1.0 / 3.0) < 0.015);
}

TEST_CASE("local focus") {
  ScriptedRandom pinned({0.25, 0.75});
  CHECK(local_focus(0.0, 1.0, 1.0, 1.0, pinned) == 0.75);

  SeededRandom rng(3);
  for (double q : {0.1, -7.3, 1e-9, 123456.789}) CHECK(local_focus(q, q, 1.0, 1.0, rng) == q);
  for (int k = 0; k < 1000; ++k) {
    const double f = local_focus(0.0, 1.0, 1.0, 1.0, rng);
    CHECK(f > 0.0);
    CHECK(f < 1.0);
  }
}

TEST_CASE("local focus lies in the pbest-guide rectangle") {
  SeededRandom rng(99);
  for (int k = 0; k < 2000; ++k) {
    std::vector<double> p(6), g(6);
    for (std::size_t j = 0; j < 6; ++j) {
      p[j] = (rng.uniform() - 0.5) * 1e3;
      g[j] = (rng.uniform() - 0.5) * 1e-2 + p[j] * rng.uniform();
    }
    const double c1 = 0.1 + 3 * rng.uniform();
    const double c2 = 0.1 + 3 * rng.uniform();
    const auto focus = local_focus(p, g, c1, c2, rng);
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(focus[j] >= std::min(p[j], g[j]));
      CHECK(focus[j] <= std::max(p[j], g[j]));
    }
  }
}

TEST_CASE("rdpso velocity") {
  ScriptedRandom one({0.5}, {1.0});
  CHECK(rdpso_velocity(3.0, 3.0, 3.0, 0.8, 1.4, one) == 0.0);
  CHECK(rdpso_velocity(0.0, 2.0, 1.0, 0.5, 1.5, one) == 2.5);
  SeededRandom rng(1);
  CHECK(rdpso_velocity(2.0, 9.0, 1.0, 0.0, 1.5, rng) == -1.5);
}

TEST_CASE("variant defaults") {
  const auto g = RdpsoConfig::defaults(RdpsoVariant::gbest);
  CHECK(g.alpha.start_value == 0.9);
  CHECK(g.alpha.end_value == 0.3);
  CHECK(g.beta == 1.45);
  CHECK(g.c1 == 1.0);
  const auto grp = RdpsoConfig::defaults(RdpsoVariant::gbest_rp);
  CHECK(grp.alpha.start_value == 0.6);
  CHECK(grp.alpha.end_value == 0.2);
  CHECK(grp.uses_random_pbest());
  CHECK(RdpsoConfig::defaults(RdpsoVariant::lbest).topology() == Topology::ring);
  CHECK(RdpsoConfig::defaults(RdpsoVariant::lbest_rp).uses_random_pbest());
  CHECK(g.stability_warnings().empty());
  RdpsoConfig wild = g;
  wild.beta = 2.5;
  wild.alpha = Schedule::constant(1.7);
  CHECK(wild.stability_warnings().size() == 2);
}

TEST_CASE("collapsed swarm is a fixed point") {
  const Problem problem = make_problem("f9_rastrigin", 4);
  const std::vector<double> q{0.3, -1.1, 2.0, 0.7};
  for (auto variant : {RdpsoVariant::gbest, RdpsoVariant::gbest_rp, RdpsoVariant::lbest,
                       RdpsoVariant::lbest_rp}) {
    SwarmState s = make_state(5, 4);
    for (Eigen::Index i = 0; i < 5; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) s.positions(i, j) = s.pbest_positions(i, j) = q[j];
      s.pbest_fitness[i] = problem.evaluate(q);
    }
    s.v_max.assign(4, 5.0);
    s.positions_scored = true;
    const SwarmState before = s;
    SeededRandom rng(2);
    Evaluator eval(problem);
    for (int n = 0; n < 20; ++n) rdpso_step(s, RdpsoConfig::defaults(variant), eval, rng, 20);
    CHECK(s.positions == before.positions);
    CHECK(s.pbest_positions == before.pbest_positions);
  }
}

TEST_CASE("drift-only motion contracts by |1 - beta| per step") {
  // The sphere optimum sits on the pbest, so pbest and gbest stay frozen.
  Problem problem("frozen", BaseFunction::sphere, 1, {-1e4, 1e4}, {-1e4, 1e4});
  problem.set_shift({2.0});
  for (double beta : {0.5, 1.5}) {
    SwarmState s = make_state(1, 1);
    s.positions(0, 0) = 1002.0;
    s.pbest_positions(0, 0) = 2.0;
    s.pbest_fitness[0] = 0.0;
    s.v_max = {1e6};
    RdpsoConfig cfg = RdpsoConfig::defaults(RdpsoVariant::gbest);
    cfg.alpha = Schedule::constant(0.0);
    cfg.beta = beta;
    SeededRandom rng(8);
    Evaluator eval(problem);
    for (int n = 1; n <= 40; ++n) {
      rdpso_step(s, cfg, eval, rng, 40);
      const double expected = std::pow(std::abs(1.0 - beta), n) * 1000.0;
      CHECK(std::abs(std::abs(s.positions(0, 0) - 2.0) - expected) <= 1e-12 * 1000.0);
      CHECK(s.pbest_positions(0, 0) == 2.0);
    }
  }
}

TEST_CASE("random-pbest variants draw one anchor index per particle") {
  const Problem problem = make_problem("f1_sphere", 3);
  SwarmState s = random_swarm(problem, 6, 4);
  ScriptedRandom rng({0.3, 0.6, 0.9}, {0.2});
  Evaluator eval(problem);
  rdpso_step(s, RdpsoConfig::defaults(RdpsoVariant::gbest_rp), eval, rng, 10);
  CHECK(rng.uniforms_drawn() == 6 + 2 * 6 * 3);
  CHECK(rng.normals_drawn() == 6 * 3);
}

TEST_CASE("velocities stay clamped and best-so-far never increases") {
  const Problem problem = make_problem("f10_rastrigin_rot", 6);
  for (const char* name : {"rdpso-gbest", "rdpso-gbest-rp", "rdpso-lbest", "rdpso-lbest-rp"}) {
    CAPTURE(name);
    const Algorithm algo = make_algorithm(name);
    SwarmState s = random_swarm(problem, 10, 6);
    SeededRandom rng(12);
    Evaluator eval(problem);
    double prev = s.gbest_fitness();
    for (int n = 0; n < 60; ++n) {
      step(s, algo, eval, rng, 60);
      for (Eigen::Index j = 0; j < s.velocities.cols(); ++j) {
        CHECK(s.velocities.col(j).cwiseAbs().maxCoeff() <= s.v_max[static_cast<std::size_t>(j)]);
      }
      CHECK(s.gbest_fitness() <= prev);
      prev = s.gbest_fitness();
    }
  }
}

TEST_CASE("run") {
  const Problem sphere = make_problem("f1_sphere", 2);
  const Algorithm gbest = make_algorithm("rdpso-gbest");
  const RunRecord r = run(sphere, gbest, {40, 500, {}}, 1);
  CHECK(r.best_fitness <= 1e-6);
  CHECK(r.best_so_far.size() == 501);
  CHECK(r.evaluations == 40 * 501);
  CHECK(std::is_sorted(r.best_so_far.rbegin(), r.best_so_far.rend()));
  CHECK(sphere.evaluate(r.best_position) == r.best_fitness);

  const RunRecord again = run(sphere, gbest, {40, 500, {}}, 1);
  CHECK(again.best_so_far == r.best_so_far);
  CHECK(again.best_position == r.best_position);

  const RunRecord zero = run(sphere, gbest, {40, 0, {}}, 3);
  SeededRandom rng(3, kMotionStream);
  Evaluator eval(sphere);
  const SwarmState init = initialize_swarm(sphere, 40, default_v_max(sphere), rng, eval);
  CHECK(zero.best_fitness == init.pbest_fitness.minCoeff());
  CHECK(zero.best_so_far.size() == 1);
}

TEST_CASE("every algorithm runs deterministically with non-increasing trajectories") {
  const Problem problem = make_problem("f4_schwefel12_noise", 5);
  for (std::string_view name : algorithm_names()) {
    CAPTURE(std::string(name));
    const Algorithm algo = make_algorithm(name);
    const RunRecord a = run(problem, algo, {12, 80, {}}, 77);
    const RunRecord b = run(problem, algo, {12, 80, {}}, 77);
    CHECK(a.best_so_far == b.best_so_far);
    CHECK(std::is_sorted(a.best_so_far.rbegin(), a.best_so_far.rend()));
    CHECK(a.best_fitness == a.best_so_far.back());
  }
}

TEST_CASE("parameters") {
  Algorithm a = make_algorithm("rdpso-lbest");
  set_parameter(a, "alpha_start", 0.8);
  set_parameter(a, "alpha_end", 0.2);
  set_parameter(a, "beta", 1.6);
  const auto& cfg = std::get<RdpsoConfig>(a.config);
  CHECK(cfg.alpha.kind == Schedule::Kind::linear);
  CHECK(cfg.alpha.start_value == 0.8);
  CHECK(cfg.beta == 1.6);
  set_parameter(a, "alpha", 0.5);
  CHECK(std::get<RdpsoConfig>(a.config).alpha.kind == Schedule::Kind::constant);
  CHECK_THROWS_AS(set_parameter(a, "chi", 0.7), Error);
  CHECK_THROWS_AS(make_algorithm("xyz"), Error);

  Algorithm in = make_algorithm("pso-in");
  set_parameter(in, "w_start", 0.7);
  CHECK(std::get<BaselineConfig>(in.config).w_schedule.start_value == 0.7);
  CHECK_THROWS_AS(set_parameter(in, "beta", 1.0), Error);
}

TEST_CASE("bounds enforcement clamps positions") {
  Problem problem = make_problem("f9_rastrigin", 5);
  problem.set_bounds_enforced(true);
  SwarmState s = random_swarm(problem, 10, 3);
  SeededRandom rng(5);
  Evaluator eval(problem);
  RdpsoConfig cfg = RdpsoConfig::defaults(RdpsoVariant::gbest);
  cfg.alpha = Schedule::constant(3.0);
  for (int n = 0; n < 30; ++n) {
    rdpso_step(s, cfg, eval, rng, 30);
    CHECK(s.positions.maxCoeff() <= 5.0);
    CHECK(s.positions.minCoeff() >= -5.0);
  }
}
