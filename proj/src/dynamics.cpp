#include "rdpso/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rdpso/error.hpp"
#include "rdpso/parallel.hpp"

namespace rdpso {
namespace {

constexpr std::size_t kFallbackDraws = 10'000'000;
constexpr std::uint64_t kFallbackSeed = 0x5eed'de17a;

// Below e^kLogFloor the |t|·e^t tail of the transformed integrand is < 1e-20.
constexpr double kLogFloor = -50.0;

double log_gap(double x, double p) {
  const double gap = std::abs(x - p);
  if (gap == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(gap);
}

}  // namespace

ParticleTrajectory simulate_particle(const DynamicsConfig& cfg, RandomSource& rng) {
  if (cfg.steps == 0) throw Error(ErrorKind::input, "simulate_particle: steps must be >= 1");
  if (!(cfg.overflow_cap > 0.0)) {
    throw Error(ErrorKind::input, "simulate_particle: overflow cap must be positive");
  }
  ParticleTrajectory out;
  out.log_gap.reserve(cfg.steps + 1);
  double x = cfg.x0;
  out.log_gap.push_back(log_gap(x, cfg.p_point));
  for (std::size_t n = 0; n < cfg.steps; ++n) {
    const double v = cfg.alpha * (x - cfg.c_point) * rng.normal() - cfg.beta * (x - cfg.p_point);
    x += v;
    const double lg = log_gap(x, cfg.p_point);
    if (std::isnan(lg) || lg >= cfg.overflow_cap) {
      out.log_gap.push_back(std::isnan(lg) ? std::numeric_limits<double>::infinity() : lg);
      out.diverged = true;
      break;
    }
    out.log_gap.push_back(lg);
  }
  return out;
}

ParticleTrajectory simulate_particle(const DynamicsConfig& cfg, std::uint64_t seed) {
  SeededRandom rng(seed);
  return simulate_particle(cfg, rng);
}

DeltaEstimate delta_monte_carlo(double alpha, double beta, std::size_t draws, RandomSource& rng) {
  if (draws < 2) throw Error(ErrorKind::input, "delta_monte_carlo: need at least 2 draws");
  const double mu = 1.0 - beta;
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 1; k <= draws; ++k) {
    const double v = std::log(std::abs(mu + alpha * rng.normal()));
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  const double var = m2 / static_cast<double>(draws - 1);
  return {mean, std::sqrt(var / static_cast<double>(draws)), true};
}

DeltaEstimate delta(double alpha, double beta, double tolerance) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::domain, "delta: alpha must be positive and finite");
  }
  if (!std::isfinite(beta)) throw Error(ErrorKind::domain, "delta: beta must be finite");

  // E ln|λ| = ∫_0^∞ ln x · [ψ(x − μ) + ψ(x + μ)] dx with ψ the N(0, α²)
  // density. With x = e^t the integrand t·e^t·[...] is smooth and decays
  // exponentially on the left and like a Gaussian on the right.
  const double mu = std::abs(1.0 - beta);
  const double norm = 1.0 / (alpha * std::sqrt(2.0 * std::numbers::pi));
  auto density = [&](double x) {
    const double a = (x - mu) / alpha;
    const double b = (x + mu) / alpha;
    return norm * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
  };
  auto integrand = [&](double t) {
    const double x = std::exp(t);
    return t * x * density(x);
  };

  const double t_hi = std::log(mu + 40.0 * alpha);
  std::vector<double> cuts{kLogFloor, t_hi, std::log(alpha)};
  if (mu > 0.0) {
    cuts.push_back(std::log(mu));
    cuts.push_back(std::log(mu + 8.0 * alpha));
    if (mu > 8.0 * alpha) cuts.push_back(std::log(mu - 8.0 * alpha));
  }
  std::erase_if(cuts, [&](double t) { return !(t >= kLogFloor && t <= t_hi); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double piece_error = 0.0;
    value += Kronrod::integrate(integrand, cuts[k], cuts[k + 1], 20, 1e-13, &piece_error);
    error += piece_error;
  }
  // Left tail beyond the floor is bounded by (|T| + 1)·e^T·max density.
  error += (std::abs(kLogFloor) + 1.0) * std::exp(kLogFloor) * 2.0 * norm;

  if (!(error <= tolerance) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "delta(" << alpha << ", " << beta << "): quadrature error " << error
        << " above tolerance " << tolerance << ", using Monte Carlo";
    warn(msg.str());
    SeededRandom rng(kFallbackSeed);
    return delta_monte_carlo(alpha, beta, kFallbackDraws, rng);
  }
  return {value, error, false};
}

RhoMoments rho_moments(double alpha, double beta, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::input, "rho_moments: n must be >= 1");
  const double m = 1.0 - beta;
  const auto k = static_cast<double>(n);
  const double mean = std::pow(m, k);
  const double second = std::pow(alpha * alpha + m * m, k);
  return {mean, second - mean * mean};
}

const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::converges:
      return "converges";
    case Boundedness::bounded_oscillating:
      return "bounded_oscillating";
    case Boundedness::divergent:
      return "divergent";
  }
  return "unknown";
}

BoundednessClass classify_boundedness(double alpha, double beta) {
  BoundednessClass out{Boundedness::bounded_oscillating, delta(alpha, beta), false};
  const double band = std::max(1e-6, 3.0 * out.delta.error);
  if (out.delta.value < -band) {
    out.kind = Boundedness::converges;
  } else if (out.delta.value > band) {
    out.kind = Boundedness::divergent;
  }
  out.sufficient_condition = alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 2.0;
  return out;
}

std::vector<BoundednessRow> boundedness_map(std::span<const double> alpha_grid,
                                            std::span<const double> beta_grid, std::size_t reps,
                                            std::size_t steps, std::uint64_t seed,
                                            const DynamicsConfig& base) {
  if (alpha_grid.empty() || beta_grid.empty()) {
    throw Error(ErrorKind::input, "boundedness_map: grids must be non-empty");
  }
  if (reps == 0) throw Error(ErrorKind::input, "boundedness_map: reps must be >= 1");
  const std::size_t cells = alpha_grid.size() * beta_grid.size();
  std::vector<BoundednessRow> rows(cells);
  parallel_for(cells, [&](std::size_t c) {
    const double alpha = alpha_grid[c / beta_grid.size()];
    const double beta = beta_grid[c % beta_grid.size()];
    const BoundednessClass cls = classify_boundedness(alpha, beta);
    DynamicsConfig cfg = base;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.steps = steps;
    std::size_t diverged = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      if (simulate_particle(cfg, seed + c * kCellSeedStride + r).diverged) ++diverged;
    }
    rows[c] = {alpha,    beta, cls.delta.value, cls.delta.error,
               cls.kind, static_cast<double>(diverged) / static_cast<double>(reps)};
  });
  return rows;
}

}  // namespace rdpso
