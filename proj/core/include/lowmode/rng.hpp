#pragma once

#include <cstdint>

namespace lowmode {

// Counter-based generator: draw i is a pure function of (seed, i), so streams
// are reproducible across platforms and independent of call order. Each draw
// mixes the counter through the 64-bit finalizer
//   z ^= z >> 30;  z *= 0xbf58476d1ce4e5b9;
//   z ^= z >> 27;  z *= 0x94d049bb133111eb;
//   z ^= z >> 31;
// after offsetting the state by the golden-ratio increment 0x9e3779b97f4a7c15.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + (counter + 1) * 0x9e3779b97f4a7c15ull;
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  // Uniform in [0, 1).
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double symmetric(std::uint64_t counter) const {
    return 2.0 * uniform01(counter) - 1.0;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace lowmode
