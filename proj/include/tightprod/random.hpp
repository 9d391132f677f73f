#pragma once

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; bounded draws use rejection sampling
// rather than std::uniform_int_distribution (implementation-defined). Stream
// seeds are derived with SplitMix64 (Steele, Lea, Flood), constants
// 0x9e3779b97f4a7c15, 0xbf58476d1ce4e5b9, 0x94d049bb133111eb.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "tightprod/graph.hpp"

namespace tightprod {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the stream identified by (master, path...).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates.
inline Permutation random_permutation(int n, Rng& rng) {
  std::vector<Vertex> images(n);
  for (int i = 0; i < n; ++i) images[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(images[i], images[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return Permutation(std::move(images));
}

}  // namespace tightprod
