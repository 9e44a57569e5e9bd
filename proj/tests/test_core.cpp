#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "rdpso/core.hpp"
#include "rdpso/error.hpp"
#include "rdpso/random.hpp"

using namespace rdpso;

namespace {

SwarmState state_with_fitness(const std::vector<double>& fitness, std::size_t n = 1) {
  SwarmState s = make_state(fitness.size(), n);
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    s.pbest_fitness[static_cast<Eigen::Index>(i)] = fitness[i];
  }
  refresh_gbest(s);
  return s;
}

}  // namespace

TEST_CASE("schedule endpoints and midpoint") {
  const Schedule lin = Schedule::linear(0.9, 0.3);
  CHECK(schedule_value(lin, 0, 5000) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(schedule_value(lin, 5000, 5000) == 0.3);
  CHECK(schedule_value(lin, 2500, 5000) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(schedule_value(Schedule::constant(0.7), 123, 5000) == 0.7);
}

TEST_CASE("schedule rejects n beyond n_max") {
  CHECK_THROWS_AS(schedule_value(Schedule::linear(1, 0), 6, 5), Error);
  CHECK_THROWS_AS(schedule_value(Schedule::constant(1), 0, 0), Error);
}

TEST_CASE("linear schedule is monotone between its endpoints") {
  for (auto [a, b] : {std::pair{0.9, 0.3}, std::pair{0.2, 0.6}}) {
    const Schedule s = Schedule::linear(a, b);
    double prev = schedule_value(s, 0, 97);
    for (std::size_t n = 1; n <= 97; ++n) {
      const double v = schedule_value(s, n, 97);
      if (a > b) {
        CHECK(v <= prev);
      } else {
        CHECK(v >= prev);
      }
      CHECK(v >= std::min(a, b));
      CHECK(v <= std::max(a, b));
      prev = v;
    }
  }
}

TEST_CASE("velocity clamp") {
  CHECK(clamp_velocity(5.0, 2.0) == 2.0);
  CHECK(clamp_velocity(-5.0, 2.0) == -2.0);
  CHECK(clamp_velocity(1.5, 2.0) == 1.5);
  CHECK_THROWS_AS(clamp_velocity(std::nan(""), 2.0), Error);
  CHECK_THROWS_AS(clamp_velocity(1.0, 0.0), Error);

  SeededRandom rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double v = (rng.uniform() - 0.5) * 1e3;
    const double m = rng.uniform() * 100.0;
    CHECK(clamp_velocity(clamp_velocity(v, m), m) == clamp_velocity(v, m));
  }
}

TEST_CASE("pbest update keeps incumbents on ties and non-finite values") {
  SwarmState s = state_with_fitness({3.0, 5.0});
  const std::vector<double> x{7.0};
  CHECK(update_pbest(s, 0, x, 1.0));
  CHECK(s.pbest_fitness[0] == 1.0);
  CHECK(s.pbest_positions(0, 0) == 7.0);

  s = state_with_fitness({3.0});
  CHECK_FALSE(update_pbest(s, 0, x, 3.0));
  CHECK_FALSE(update_pbest(s, 0, x, std::nan("")));
  CHECK_FALSE(update_pbest(s, 0, x, std::numeric_limits<double>::infinity()));
  CHECK(s.pbest_fitness[0] == 3.0);
  CHECK(s.pbest_positions(0, 0) == 0.0);
}

TEST_CASE("best in neighborhood") {
  CHECK(best_in_neighborhood(state_with_fitness({3, 1, 2}), 0, Topology::global) == 1);
  CHECK(best_in_neighborhood(state_with_fitness({3, 1, 2, 0, 9}), 0, Topology::ring) == 1);
  CHECK(best_in_neighborhood(state_with_fitness({3, 1, 2, 0, 9}), 4, Topology::ring) == 3);
  CHECK(best_in_neighborhood(state_with_fitness({1, 1, 1}), 2, Topology::global) == 0);
  // Ties in a wrapped ring go to the lowest particle index.
  CHECK(best_in_neighborhood(state_with_fitness({1, 5, 5, 1}), 3, Topology::ring) == 0);
  CHECK_THROWS_AS(best_in_neighborhood(state_with_fitness({1, 2}), 0, Topology::ring), Error);
}

TEST_CASE("ring neighborhood wraps") {
  const auto hood = ring_neighborhood(0, 5);
  CHECK(hood[0] == 4);
  CHECK(hood[1] == 0);
  CHECK(hood[2] == 1);
}

TEST_CASE("gbest stays the minimum under random pbest updates") {
  SeededRandom rng(3);
  SwarmState s = state_with_fitness(std::vector<double>(8, 100.0));
  const std::vector<double> x{0.0};
  for (int k = 0; k < 2000; ++k) {
    const std::size_t i = rng.index(8);
    const double before = s.pbest_fitness[static_cast<Eigen::Index>(i)];
    if (update_pbest(s, i, x, rng.uniform() * 100.0)) update_gbest(s, i);
    CHECK(s.pbest_fitness[static_cast<Eigen::Index>(i)] <= before);
    CHECK(s.gbest_fitness() == s.pbest_fitness.minCoeff());
  }
}

TEST_CASE("seeded random source") {
  SeededRandom a(42);
  SeededRandom b(42);
  SeededRandom c(42, 1);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const double ua = a.uniform();
    CHECK(ua == b.uniform());
    CHECK(ua > 0.0);
    CHECK(ua < 1.0);
    CHECK(a.normal() == b.normal());
    differs = differs || ua != c.uniform();
    c.normal();
  }
  CHECK(differs);

  SeededRandom r(5);
  double sum = 0.0;
  double sq = 0.0;
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / draws) < 0.01);
  CHECK(std::abs(sq / draws - 1.0) < 0.02);
}
