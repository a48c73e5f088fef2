#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace swipt {

// Deterministic random source. xoshiro256++ seeded through splitmix64 so that
// the same seed yields the same stream on every platform; normals come from an
// explicit Box-Muller transform instead of std::normal_distribution, whose
// algorithm is implementation defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  // Derives an independent stream seed, used for per-trial and per-user draws.
  static uint64_t derive(uint64_t base, uint64_t stream) {
    uint64_t x = base ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    return splitmix64(x);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal. Draws a full Box-Muller pair and keeps the cosine branch.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * M_PI * uniform());
  }

  // Circularly symmetric complex normal with unit variance, E|z|^2 = 1.
  std::complex<double> cnormal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double th = 2.0 * M_PI * uniform();
    return {r * std::cos(th), r * std::sin(th)};
  }

  // Unit-mean exponential, the squared magnitude of a cnormal draw.
  double exponential() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return -std::log(u1);
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace swipt
