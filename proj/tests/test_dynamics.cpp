#include "doctest.h"

#include <cmath>
#include <vector>

#include "rdpso/dynamics.hpp"
#include "rdpso/error.hpp"
#include "rdpso/rdpso.hpp"
#include "test_support.hpp"

using namespace rdpso;
using rdpso::testing::mean_and_stderr;

namespace {

DynamicsConfig drift_only(double beta, double gap0, std::size_t steps) {
  DynamicsConfig cfg;
  cfg.alpha = 0.0;
  cfg.beta = beta;
  cfg.p_point = 3.0;
  cfg.x0 = 3.0 + gap0;
  cfg.steps = steps;
  return cfg;
}

}  // namespace

TEST_CASE("drift-only trajectory halves the gap") {
  const auto traj = simulate_particle(drift_only(0.5, 8.0, 3), 1);
  REQUIRE(traj.log_gap.size() == 4);
  const double expected[] = {8, 4, 2, 1};
  for (int n = 0; n < 4; ++n) CHECK(std::exp(traj.log_gap[n]) == doctest::Approx(expected[n]).epsilon(1e-14));
  CHECK_FALSE(traj.diverged);
}

TEST_CASE("drift-only decay is exactly geometric") {
  for (double beta : {0.5, 1.0, 1.5}) {
    CAPTURE(beta);
    const auto traj = simulate_particle(drift_only(beta, 1000.0, 50), 4);
    REQUIRE(traj.log_gap.size() == 51);
    for (std::size_t n = 0; n <= 50; ++n) {
      const double gap = std::exp(traj.log_gap[n]);
      const double expected = std::pow(std::abs(1.0 - beta), static_cast<double>(n)) * 1000.0;
      CHECK(std::abs(gap - expected) <= 1e-12 * 1000.0);
    }
    if (beta == 1.0) CHECK(std::isinf(traj.log_gap[1]));
  }
}

TEST_CASE("simulation outcomes") {
  DynamicsConfig cfg;
  const auto stable = simulate_particle(cfg, 11);
  CHECK_FALSE(stable.diverged);
  CHECK(stable.log_gap.size() == cfg.steps + 1);

  cfg.alpha = 2.5;
  cfg.beta = 0.5;
  const auto wild = simulate_particle(cfg, 11);
  CHECK(wild.diverged);
  CHECK(wild.log_gap.back() >= cfg.overflow_cap);
  CHECK(wild.log_gap.size() <= cfg.steps + 1);

  CHECK_THROWS_AS(simulate_particle(drift_only(0.5, 1.0, 0), 1), Error);

  const auto a = simulate_particle(DynamicsConfig{}, 42);
  const auto b = simulate_particle(DynamicsConfig{}, 42);
  CHECK(a.log_gap == b.log_gap);
}

TEST_CASE("(2, 1) is divergent but drifts slowly") {
  const auto cls = classify_boundedness(2.0, 1.0);
  CHECK(cls.kind == Boundedness::divergent);
  CHECK(cls.delta.value > 0.0);
  // Δ(2,1) = ln 2 + E ln|Z|; Z standard normal.
  CHECK(cls.delta.value == doctest::Approx(std::log(2.0) - 0.6351814227).epsilon(1e-8));

  // At roughly 0.058 per step the ln-gap needs ~12000 steps to climb
  // from ln 1000 to the cap.
  DynamicsConfig cfg;
  cfg.alpha = 2.0;
  cfg.beta = 1.0;
  cfg.steps = 40000;
  int hits = 0;
  for (std::uint64_t r = 0; r < 10; ++r) hits += simulate_particle(cfg, 500 + r).diverged ? 1 : 0;
  CHECK(hits >= 9);
}

TEST_CASE("delta at the standard normal") {
  const auto d = delta(1.0, 1.0);
  CHECK_FALSE(d.monte_carlo);
  CHECK(d.error <= 1e-6);
  // E ln|Z| = −(γ + ln 2)/2.
  const double exact = -(0.57721566490153286 + std::log(2.0)) / 2.0;
  CHECK(d.value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(d.value == doctest::Approx(-0.635).epsilon(0.01));

  CHECK(delta(0.5, 1.5).value < 0.0);
  CHECK_THROWS_AS(delta(0.0, 1.0), Error);
  CHECK_THROWS_AS(delta(-1.0, 1.0), Error);
  CHECK_THROWS_AS(delta(1.0, INFINITY), Error);
}

TEST_CASE("delta matches Monte Carlo on a 5x5 grid") {
  SeededRandom rng(2024);
  for (int ia = 0; ia < 5; ++ia) {
    for (int ib = 0; ib < 5; ++ib) {
      const double alpha = 0.3 + 0.45 * ia;
      const double beta = 0.2 + 0.4 * ib;
      CAPTURE(alpha);
      CAPTURE(beta);
      const auto q = delta(alpha, beta);
      const auto mc = delta_monte_carlo(alpha, beta, 1'000'000, rng);
      CHECK(q.error <= 1e-6);
      CHECK(std::abs(q.value - mc.value) <= 4.0 * mc.error);
    }
  }
}

TEST_CASE("rho moments") {
  const auto two = rho_moments(0.5, 1.5, 2);
  CHECK(two.mean == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(two.variance == doctest::Approx(0.1875).epsilon(1e-15));
  for (std::size_t n : {1, 4, 9}) CHECK(rho_moments(0.8, 1.0, n).mean == 0.0);
  const auto one = rho_moments(0.7, 0.4, 1);
  CHECK(std::abs(one.mean - 0.6) <= 1e-12);
  CHECK(std::abs(one.variance - 0.49) <= 1e-12);
  CHECK(std::isinf(rho_moments(3.0, 0.0, 5000).variance));
  CHECK_THROWS_AS(rho_moments(0.5, 1.5, 0), Error);
}

TEST_CASE("rho moments match sampled products") {
  SeededRandom rng(31);
  const double alpha = 0.5;
  const double beta = 1.5;
  for (std::size_t n : {1, 3, 6}) {
    CAPTURE(n);
    const auto exact = rho_moments(alpha, beta, n);
    std::vector<double> products(1'000'000);
    std::vector<double> sq(products.size());
    for (std::size_t k = 0; k < products.size(); ++k) {
      double rho = 1.0;
      for (std::size_t i = 0; i < n; ++i) rho *= (1.0 - beta) + alpha * rng.normal();
      products[k] = rho;
      sq[k] = (rho - exact.mean) * (rho - exact.mean);
    }
    const auto m = mean_and_stderr(products);
    const auto v = mean_and_stderr(sq);
    CHECK(std::abs(m.mean - exact.mean) <= 4.0 * m.stderr_);
    CHECK(std::abs(v.mean - exact.variance) <= 4.0 * v.stderr_);
  }
}

TEST_CASE("classification") {
  const auto inside = classify_boundedness(0.7, 1.5);
  CHECK(inside.kind == Boundedness::converges);
  CHECK(inside.sufficient_condition);

  const auto outside = classify_boundedness(1.5, 1.5);
  CHECK_FALSE(outside.sufficient_condition);
  // Δ(1.5, 1.5) = ln 1.5 + E ln|Z − 1/3| by Monte Carlo, about −0.18.
  SeededRandom rng(9);
  const auto mc = delta_monte_carlo(1.5, 1.5, 1'000'000, rng);
  CHECK(mc.value < 0.0);
  CHECK(outside.kind == Boundedness::converges);

  CHECK(classify_boundedness(2.0, 1.0).kind == Boundedness::divergent);
  CHECK(std::string(to_string(Boundedness::bounded_oscillating)) == "bounded_oscillating");

  for (int ia = 1; ia <= 7; ++ia) {
    for (int ib = 1; ib <= 7; ++ib) {
      CHECK(classify_boundedness(ia / 8.0, ib / 4.0).kind == Boundedness::converges);
    }
  }
}

TEST_CASE("the two velocity forms share a distribution") {
  const double x = 4.0, c = -1.0, p = 2.5, alpha = 0.8, beta = 1.3;
  SeededRandom rng(71);
  std::vector<double> abs_form(1'000'000), signed_form(1'000'000);
  for (std::size_t k = 0; k < abs_form.size(); ++k) {
    abs_form[k] = rdpso_velocity(x, c, p, alpha, beta, rng);
    signed_form[k] = alpha * (x - c) * rng.normal() - beta * (x - p);
  }
  const auto a = mean_and_stderr(abs_form);
  const auto b = mean_and_stderr(signed_form);
  CHECK(std::abs(a.mean - b.mean) <= 4.0 * std::hypot(a.stderr_, b.stderr_));

  std::vector<double> va(abs_form.size()), vb(abs_form.size());
  for (std::size_t k = 0; k < va.size(); ++k) {
    va[k] = (abs_form[k] - a.mean) * (abs_form[k] - a.mean);
    vb[k] = (signed_form[k] - b.mean) * (signed_form[k] - b.mean);
  }
  const auto sa = mean_and_stderr(va);
  const auto sb = mean_and_stderr(vb);
  CHECK(std::abs(sa.mean - sb.mean) <= 4.0 * std::hypot(sa.stderr_, sb.stderr_));
}

TEST_CASE("boundedness map") {
  const std::vector<double> alphas{0.2, 0.5, 0.9};
  const std::vector<double> betas{0.3, 1.0, 1.7};
  const auto rows = boundedness_map(alphas, betas, 5, 2000, 1);
  REQUIRE(rows.size() == 9);
  for (std::size_t c = 0; c < rows.size(); ++c) {
    CHECK(rows[c].alpha == alphas[c / 3]);
    CHECK(rows[c].beta == betas[c % 3]);
    CHECK(rows[c].classification == Boundedness::converges);
    CHECK(rows[c].diverged_fraction == 0.0);
  }

  const std::vector<double> a25{2.5};
  const std::vector<double> b05{0.5};
  const auto wild = boundedness_map(a25, b05, 20, 5000, 1);
  CHECK(wild[0].diverged_fraction == 1.0);
  CHECK(wild[0].classification == Boundedness::divergent);

  const auto minimal = boundedness_map(a25, b05, 1, 1, 1);
  REQUIRE(minimal.size() == 1);
  CHECK(minimal[0].delta == doctest::Approx(wild[0].delta));
  CHECK(minimal[0].diverged_fraction == 0.0);

  // Reruns reproduce every cell.
  const auto again = boundedness_map(alphas, betas, 5, 2000, 1);
  for (std::size_t c = 0; c < rows.size(); ++c) CHECK(again[c].diverged_fraction == rows[c].diverged_fraction);

  const std::vector<double> none;
  CHECK_THROWS_AS(boundedness_map(none, betas, 1, 1, 1), Error);
  CHECK_THROWS_AS(boundedness_map(alphas, betas, 0, 1, 1), Error);
}
