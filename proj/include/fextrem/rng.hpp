#ifndef FEXTREM_RNG_HPP
#define FEXTREM_RNG_HPP

#include <cstdint>
#include <random>

namespace fextrem {

/// Finalizer with full avalanche; consecutive inputs map to decorrelated
/// outputs.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic per-stream seed: one user seed fans out into independent
/// substreams addressed by index, so replications can run in any order or
/// in parallel and still reproduce.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) + 0x9E3779B97F4A7C15ull * (stream + 1));
}

inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(stream_seed(seed, stream));
}

}  // namespace fextrem

#endif
