#pragma once

#include <cstdint>
#include <random>

namespace cmbvs {

// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for replicate r / chain j so concurrent work stays reproducible
// regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt + 1));
}

// Thin wrapper over mt19937_64. Distribution objects are constructed per call
// so the draw sequence depends only on the engine state, never on cached
// internals (std::normal_distribution keeps a spare value otherwise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }

  // Gamma with shape/rate parameterization (mean = shape/rate).
  double gamma_rate(double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
  }

  double inverse_gamma(double shape, double rate) {
    return rate == 0.0 ? 0.0 : 1.0 / gamma_rate(shape, rate);
  }

  bool bernoulli(double p) {
    return std::bernoulli_distribution(p)(engine_);
  }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return std::uniform_int_distribution<long>(lo, hi)(engine_);
  }

  long binomial(long n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<long>(n, p)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cmbvs
