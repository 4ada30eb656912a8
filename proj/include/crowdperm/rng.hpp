#pragma once

#include <cstdint>

// Counter-based pseudo-random numbers built on the SplitMix64 finalizer.
// Every draw is a pure function of (key, counter), so streams can be
// split, replayed, and consumed from multiple threads without shared
// state. All experiment code records its key so runs are reproducible
// within one build.

namespace crowdperm::rng {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Word `counter` of the stream identified by `key`.
constexpr std::uint64_t stream_word(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + kGoldenGamma * (counter + 1));
}

// Key of an independent substream. derive_stream(k, a) != derive_stream(k, b)
// for a != b except for hash collisions.
constexpr std::uint64_t derive_stream(std::uint64_t key, std::uint64_t stream) {
  return mix64(key ^ (0xd1342543de82ef95ull * (stream + 1)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t key, std::uint64_t counter) {
  return static_cast<double>(stream_word(key, counter) >> 11) * 0x1.0p-53;
}

// Deterministic 64-bit mix of several values, used for per-trial seeds.
constexpr std::uint64_t mix_values(std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
  return mix64(mix64(a + kGoldenGamma) ^ mix64(b + 2 * kGoldenGamma) ^
               mix64(c + 3 * kGoldenGamma));
}

}  // namespace crowdperm::rng
