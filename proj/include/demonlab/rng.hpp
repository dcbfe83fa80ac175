#pragma once

#include <cstdint>
#include <random>

namespace demonlab {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of substream `block` of stream `tag` under `master`. Every block of
// every run gets its own generator, so shards are reproducible from the
// master seed alone regardless of how blocks are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t block) noexcept;

class BlockRng {
 public:
  explicit BlockRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Standard normal via Box-Muller.
  double normal() noexcept;
  // Poisson by inversion; intended for small means.
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace demonlab
