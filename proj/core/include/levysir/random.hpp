#pragma once

#include <cstdint>
#include <random>

namespace levysir {

/// SplitMix64 finalizer. Used to derive well-separated seeds from
/// (master seed, path index) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic per-path random source.
///
/// The engine for path k of an ensemble seeded with m is a 64-bit Mersenne
/// twister initialised from the four words
///   w_j = splitmix64(splitmix64(m) ^ splitmix64(k + j * 0x9E3779B97F4A7C15))
/// for j = 0..3. A stream depends only on (m, k), so paths can be simulated
/// in any order or on any thread. Draws are produced by code in this class
/// rather than std:: distributions so sequences are identical across
/// standard library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t path_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t path_index() const { return path_index_; }

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform();

  /// Poisson variate with the given mean (>= 0). Inversion by sequential
  /// search, exact for any mean; cost grows linearly with the mean.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t master_seed_;
  std::uint64_t path_index_;
  std::mt19937_64 engine_;
};

}  // namespace levysir
