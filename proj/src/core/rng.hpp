#pragma once

#include <cstdint>
#include <random>

namespace sparkproj {

// Stateless 64-bit mixer (splitmix64). Used both as a standalone hash step
// and to derive independent substreams from a base seed.
uint64_t splitmix64(uint64_t& state);

// Deterministic random source: std::mt19937_64 for uniform 64-bit output
// (the engine's output sequence is fixed by the standard), Gaussians via the
// Box-Muller transform so the value stream is identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit();

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi);

  // Standard normal via Box-Muller; pairs are generated, the spare is cached.
  double next_gaussian();

  // Derives a substream seed from (seed, a, b). Distinct (a, b) give
  // decorrelated streams regardless of how many values each consumes.
  static uint64_t derive(uint64_t seed, uint64_t a, uint64_t b = 0);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sparkproj
