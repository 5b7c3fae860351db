#pragma once
// Deterministic random number generation.
//
// A fixed, self-contained generator (splitmix64) plus explicit mappings to
// uniform and normal variates, so that every seeded computation in the
// library reproduces bit-for-bit across runs and toolchains — std::mt19937
// distributions are not bit-stable across standard library implementations.

#include <cmath>
#include <cstdint>

#include "qree/complex_mat.hpp"

namespace qree {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = std::max(uniform(), 0x1.0p-53);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  cx normal_cx() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  // Haar-like random pure two-qubit state (Gaussian amplitudes, normalized).
  Vec4 pure_state() {
    Vec4 v;
    for (auto& a : v) a = normal_cx();
    return scaled(v, 1.0 / norm(v));
  }

  Vec2 qubit_state() {
    Vec2 v{normal_cx(), normal_cx()};
    return scaled(v, 1.0 / norm(v));
  }

  // Flat Dirichlet weights (normalized exponentials).
  void simplex(double* w, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = -std::log(std::max(uniform(), 0x1.0p-53));
      sum += w[i];
    }
    for (int i = 0; i < n; ++i) w[i] /= sum;
  }

 private:
  std::uint64_t state_;
};

}  // namespace qree
