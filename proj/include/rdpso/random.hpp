#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rdpso {

// Source of the uniform and standard-normal draws consumed by every stochastic
// routine. Uniforms are strictly inside (0, 1).
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual double uniform() = 0;
  virtual double normal() = 0;

  // Index in [0, count) taken from exactly one uniform draw.
  std::size_t index(std::size_t count) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(count));
    return k < count ? k : count - 1;
  }
};

// Mersenne-twister backed source. Identical (seed, stream) pairs give
// bit-identical draw sequences.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform() override;
  double normal() override;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Stream identifiers used to derive independent sources from one run seed.
inline constexpr std::uint64_t kMotionStream = 0;
inline constexpr std::uint64_t kNoiseStream = 1;

}  // namespace rdpso
