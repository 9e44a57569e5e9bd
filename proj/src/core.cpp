#include "rdpso/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdpso/error.hpp"

namespace rdpso {

double schedule_value(const Schedule& schedule, std::size_t n, std::size_t n_max) {
  if (n_max == 0) throw Error(ErrorKind::input, "schedule: n_max must be at least 1");
  if (n > n_max) {
    throw Error(ErrorKind::input, "schedule: iteration " + std::to_string(n) +
                                      " exceeds n_max " + std::to_string(n_max));
  }
  if (schedule.kind == Schedule::Kind::constant) return schedule.start_value;
  if (n == n_max) return schedule.end_value;
  const double t = static_cast<double>(n) / static_cast<double>(n_max);
  return schedule.start_value - (schedule.start_value - schedule.end_value) * t;
}

double clamp_velocity(double v, double v_max) {
  if (!(v_max > 0.0)) throw Error(ErrorKind::input, "clamp_velocity: v_max must be positive");
  if (!std::isfinite(v)) throw Error(ErrorKind::numeric, "clamp_velocity: non-finite velocity");
  return std::clamp(v, -v_max, v_max);
}

std::array<std::size_t, 3> ring_neighborhood(std::size_t i, std::size_t m) {
  if (m < 3) throw Error(ErrorKind::input, "ring topology needs at least 3 particles");
  return {(i + m - 1) % m, i, (i + 1) % m};
}

SwarmState make_state(std::size_t m, std::size_t n) {
  SwarmState s;
  const auto rows = static_cast<Eigen::Index>(m);
  const auto cols = static_cast<Eigen::Index>(n);
  s.positions = Matrix::Zero(rows, cols);
  s.velocities = Matrix::Zero(rows, cols);
  s.pbest_positions = Matrix::Zero(rows, cols);
  s.pbest_fitness = Eigen::VectorXd::Constant(rows, std::numeric_limits<double>::infinity());
  s.v_max.assign(n, std::numeric_limits<double>::infinity());
  return s;
}

bool update_pbest(SwarmState& state, std::size_t i, std::span<const double> x, double fx) {
  if (!std::isfinite(fx)) return false;
  const auto row = static_cast<Eigen::Index>(i);
  if (!(fx < state.pbest_fitness[row])) return false;
  std::copy(x.begin(), x.end(), SwarmState::row(state.pbest_positions, i).begin());
  state.pbest_fitness[row] = fx;
  return true;
}

void update_gbest(SwarmState& state, std::size_t i) {
  const double fi = state.pbest_fitness[static_cast<Eigen::Index>(i)];
  const double fg = state.gbest_fitness();
  if (fi < fg || (fi == fg && i < state.gbest_index)) state.gbest_index = i;
}

void refresh_gbest(SwarmState& state) {
  state.gbest_index = best_in_neighborhood(state, 0, Topology::global);
}

std::size_t best_in_neighborhood(const SwarmState& state, std::size_t i, Topology topology) {
  const std::size_t m = state.particles();
  if (topology == Topology::global) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < m; ++k) {
      if (state.pbest_fitness[static_cast<Eigen::Index>(k)] <
          state.pbest_fitness[static_cast<Eigen::Index>(best)]) {
        best = k;
      }
    }
    return best;
  }
  const auto hood = ring_neighborhood(i, m);
  std::size_t best = hood[0];
  for (std::size_t k : hood) {
    const double fk = state.pbest_fitness[static_cast<Eigen::Index>(k)];
    const double fb = state.pbest_fitness[static_cast<Eigen::Index>(best)];
    if (fk < fb || (fk == fb && k < best)) best = k;
  }
  return best;
}

}  // namespace rdpso
