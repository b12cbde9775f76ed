#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace sumdim::rng {

// SplitMix64 step; used to derive well-separated stream seeds from one master
// seed so that parallel samplers stay reproducible regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull);
  splitmix64(s);
  return splitmix64(s);
}

// mt19937_64 with explicit double mappings.  The mappings are spelled out
// (rather than using std::uniform_real_distribution) so output bytes do not
// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : gen_(mix_seed(seed, stream)) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0,1) with 53-bit resolution
  double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // unbiased integer in [0,n)
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= lim);
    return v % n;
  }

  // Box-Muller without caching the second value (keeps streams stateless
  // between calls of different kinds).
  double normal() {
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  void unit_vector(std::span<double> out) {
    if (out.size() == 1) {
      out[0] = uniform01() < 0.5 ? -1.0 : 1.0;
      return;
    }
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& x : out) {
        x = normal();
        norm2 += x * x;
      }
    } while (norm2 == 0.0);
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : out) x *= inv;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sumdim::rng
