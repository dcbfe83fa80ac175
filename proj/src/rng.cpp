#include "demonlab/rng.hpp"

#include <cmath>
#include <numbers>

#include "demonlab/diagnostics.hpp"

namespace demonlab {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t block) noexcept {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64(s);
  s = a ^ mix64(tag + 0xD1B54A32D192ED03ULL);
  const std::uint64_t b = splitmix64(s);
  s = b ^ mix64(block + 0x8CB92BA72F3D8DD7ULL);
  return splitmix64(s);
}

double BlockRng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

int BlockRng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > 500.0) throw DomainError("poisson mean out of supported range");
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  int n = 0;
  while (u >= cdf) {
    ++n;
    p *= mean / n;
    cdf += p;
    if (p == 0.0 && n > mean) break;  // cdf has saturated below u by rounding
  }
  return n;
}

}  // namespace demonlab
