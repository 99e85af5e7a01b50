#pragma once

#include <cstdint>
#include <random>

namespace specrings {

// Seedable, splittable generator.
//
// The engine is std::mt19937_64 (Matsumoto & Nishimura 64-bit Mersenne
// Twister, whose 10000th output from the default seed is the published
// reference 9981545732273789042). Sub-streams are seeded through the
// SplitMix64 finalizer applied to (master, index), so disjoint tasks draw
// from independent streams regardless of scheduling.
//
// Uniforms use the top 53 bits of one engine word. Normals use the
// Box-Muller transform on two uniforms; both variates of a pair are used.
// None of this depends on implementation-defined <random> distributions,
// so streams are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream number `index` derived from `master`.
  static Rng substream(std::uint64_t master, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on (0, 1): never returns 0, so log(u) is finite.
  double uniform_open();
  // Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace specrings
