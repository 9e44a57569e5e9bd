#include "rdpso/random.hpp"

namespace rdpso {

SeededRandom::SeededRandom(std::uint64_t seed, std::uint64_t stream) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double SeededRandom::uniform() {
  // 53 random bits mapped to the cell midpoints k/2^53 + 2^-54, never 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double SeededRandom::normal() { return normal_(engine_); }

}  // namespace rdpso
