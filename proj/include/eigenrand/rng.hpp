#pragma once

#include <cstdint>
#include <cmath>

namespace eigenrand::mc {

// Counter-based stream seeding: stream k of a master seed is an independent
// generator, so a fixed chunk plan reproduces bit-identically under any
// thread count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256++, seeded from (master_seed, stream) through splitmix64.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t st = master_seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
    for (auto& w : s_) w = splitmix64(st);
    has_spare_ = false;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in (0,1); never exactly 0 so logs and inverse CDFs are safe
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double rademacher() { return (next_u64() & 1ull) ? 1.0 : -1.0; }

  // Box-Muller; stdlib normal_distribution is not bit-stable across
  // implementations, this is.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // uniform on the complex unit circle, returned as (re, im)
  void unit_phase(double& re, double& im) {
    double a = 6.283185307179586476925287 * uniform();
    re = std::cos(a);
    im = std::sin(a);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_;
};

}  // namespace eigenrand::mc
