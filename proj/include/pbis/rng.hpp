#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pbis {

using Engine = std::mt19937_64;

// Seed derivation: every random stream in the project is keyed by
// (master seed, purpose label, index). The label is hashed with 64-bit
// FNV-1a and the three words are mixed through SplitMix64 finalizers, so
// streams with different labels or indices are statistically independent
// and a stream never depends on how many draws another stream made.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                          std::uint64_t index = 0);

Engine make_engine(std::uint64_t master, std::string_view purpose,
                   std::uint64_t index = 0);

std::uint64_t fnv1a64(std::string_view bytes);

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pbis
