#include "levysir/random.hpp"

#include <array>
#include <cmath>

namespace levysir {

namespace {

std::seed_seq derive_seed(std::uint64_t master, std::uint64_t index) {
  const std::uint64_t m = splitmix64(master);
  std::array<std::uint32_t, 8> words{};
  for (std::uint64_t j = 0; j < 4; ++j) {
    const std::uint64_t w = splitmix64(m ^ splitmix64(index + j * 0x9E3779B97F4A7C15ULL));
    words[2 * j] = static_cast<std::uint32_t>(w);
    words[2 * j + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t path_index)
    : master_seed_(master_seed), path_index_(path_index) {
  auto seq = derive_seed(master_seed, path_index);
  engine_.seed(seq);
}

double RandomStream::uniform() {
  // (k + 0.5) / 2^53 for k in [0, 2^53): never 0, never 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean > 500.0) {
    // e^-mean underflows the running product; split into independent halves.
    return poisson(0.5 * mean) + poisson(0.5 * mean);
  }
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // tail exhausted in double precision
    cdf = next;
  }
  return k;
}

}  // namespace levysir
