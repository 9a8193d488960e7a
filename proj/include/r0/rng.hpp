#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace r0 {

// All randomness flows through one mt19937_64 stream per logical consumer.
// Normals are hand-rolled Box-Muller on explicit uniforms so the draw
// sequence is pinned to the engine's bit stream and does not depend on the
// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // One draw per call; the cosine branch only, so each normal consumes
  // exactly two engine words.
  double normal() {
    double u1 = uniform_pos();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::vector<double> normal_vec(int n) {
    std::vector<double> v(n);
    for (double& x : v) x = normal();
    return v;
  }

  // Uniform over {0, ..., n-1}. Modulo bias is ~n/2^64, irrelevant at the
  // class counts used here.
  int uniform_int(int n) { return int(engine_() % std::uint64_t(n)); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace r0
