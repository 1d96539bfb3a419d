#ifndef INTERPK_RANDOM_HPP_
#define INTERPK_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace interpk {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent generator for (seed, stream); sample i of a run always sees the
// same numbers regardless of how many samples are drawn or in which order.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(std::mt19937_64& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace interpk

#endif  // INTERPK_RANDOM_HPP_
