#include "core/rng.hpp"

#include <cmath>

namespace sparkproj {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) : engine_(seed) {}

uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_uniform(double lo, double hi) {
  return lo + next_unit() * (hi - lo);
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so log(u1) is finite.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

uint64_t Rng::derive(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t state = seed;
  splitmix64(state);
  state ^= 0xa0761d6478bd642fULL * (a + 1);
  splitmix64(state);
  state ^= 0xe7037ed1a0b428dbULL * (b + 1);
  return splitmix64(state);
}

}  // namespace sparkproj
