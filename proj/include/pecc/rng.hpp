#pragma once

#include <cstdint>

namespace pecc {

// Fixed 64-bit shift-register generator (xorshift64*, Vigna 2016 variant).
// No platform entropy anywhere: the same seed produces the same stream on
// every build, which is what makes sampled CSV output byte-reproducible.
//
//   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;  return x * 2685821657736338717
//
// A zero seed would lock the register at zero, so it is remapped to a fixed
// nonzero constant.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 2685821657736338717ull;
  }

  // Uniform double in [0, 1) using the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// SplitMix64 finalizer; used only to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed-split rule for concurrent sweeps: stream k of base seed s is seeded
// with splitmix64(s XOR (k+1)*GOLDEN).  Streams are decorrelated and the
// mapping is part of the output contract (documented, never changed).
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ ((index + 1) * 0x9e3779b97f4a7c15ull));
}

}  // namespace pecc
