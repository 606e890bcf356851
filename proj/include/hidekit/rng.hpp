#pragma once

#include <cstdint>
#include <random>

namespace hidekit {

/// SplitMix64 finalizer. Used for seed derivation only.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream for child `index` (agent, trial, member)
/// under `master`. Stable across versions; outputs depend on it.
constexpr std::uint64_t ChildSeed(std::uint64_t master, std::uint64_t index) {
  return Mix64(master ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits. Unlike
/// std::uniform_real_distribution the result is fixed by the engine output.
inline double Uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

/// Uniform index in [0, count).
inline int UniformIndex(Engine& engine, int count) {
  int i = static_cast<int>(Uniform01(engine) * count);
  return i < count ? i : count - 1;
}

}  // namespace hidekit
