#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdpso/random.hpp"

namespace rdpso {

// One-dimensional particle with fixed random-component center C and fixed
// local focus p:  X_{n+1} = X_n + α(X_n − C)φ_{n+1} − β(X_n − p).
struct DynamicsConfig {
  double alpha = 0.5;
  double beta = 1.5;
  double c_point = 0.001;
  double p_point = 0.0;
  double x0 = 1000.0;
  std::size_t steps = 5000;
  double overflow_cap = 700.0;  // ln-gap at which the run counts as diverged
};

struct ParticleTrajectory {
  // ln|X_n − p| for n = 0..steps (shorter when diverged). −infinity marks a
  // gap of exactly zero.
  std::vector<double> log_gap;
  bool diverged = false;
};

ParticleTrajectory simulate_particle(const DynamicsConfig& cfg, RandomSource& rng);
ParticleTrajectory simulate_particle(const DynamicsConfig& cfg, std::uint64_t seed);

struct DeltaEstimate {
  double value = 0.0;
  double error = 0.0;
  bool monte_carlo = false;  // quadrature stalled and sampling took over
};

// Δ(α, β) = E ln|λ| for λ ~ N(1 − β, α²). Adaptive Gauss–Kronrod on the
// log-transformed half lines, which removes the ln|x| singularity at 0.
// Falls back to 10^7-draw Monte Carlo with a warning if the error estimate
// stays above `tolerance`. Throws Error(domain) for α <= 0 or non-finite β.
DeltaEstimate delta(double alpha, double beta, double tolerance = 1e-6);

// Plain Monte Carlo estimate of Δ with its standard error.
DeltaEstimate delta_monte_carlo(double alpha, double beta, std::size_t draws, RandomSource& rng);

struct RhoMoments {
  double mean;
  double variance;
};

// Moments of ρ_n = λ_1···λ_n: mean (1−β)^n, variance [α² + (1−β)²]^n − (1−β)^{2n}.
RhoMoments rho_moments(double alpha, double beta, std::size_t n);

enum class Boundedness { converges, bounded_oscillating, divergent };

const char* to_string(Boundedness b);

struct BoundednessClass {
  Boundedness kind;
  DeltaEstimate delta;
  bool sufficient_condition;  // 0 < α < 1 and 0 < β < 2
};

// Sign of Δ with a dead band of max(1e-6, 3·error) around zero.
BoundednessClass classify_boundedness(double alpha, double beta);

struct BoundednessRow {
  double alpha;
  double beta;
  double delta;
  double delta_error;
  Boundedness classification;
  double diverged_fraction;
};

// Rows in alpha-major order. Cell c (0-based in that order) simulates rep r
// with seed + c·10^6 + r, using `base` for C, p, X0 and the cap.
std::vector<BoundednessRow> boundedness_map(std::span<const double> alpha_grid,
                                            std::span<const double> beta_grid, std::size_t reps,
                                            std::size_t steps, std::uint64_t seed,
                                            const DynamicsConfig& base = {});

inline constexpr std::uint64_t kCellSeedStride = 1'000'000;

}  // namespace rdpso
