#pragma once

#include <cstdint>
#include <random>

namespace fsv {

/// splitmix64 step; used to derive well-separated stream seeds from (seed, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic per-block engine so parallel blocks reproduce at any thread count.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t block) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(block + 1)));
}

}  // namespace fsv
