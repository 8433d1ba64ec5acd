#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace rct {

// Stateless seed mixer (splitmix64 finalizer); chunk streams derive from it.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Monte Carlo estimate with a 95% confidence interval.
struct MCEstimate {
  double value = 0.0;
  double half_width_95 = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Samples are generated in fixed-size chunks, each chunk with its own
// generator seeded by mix_seed(seed, chunk). Results depend only on
// (seed, n) -- never on how chunks are scheduled.
inline constexpr std::uint64_t kMcChunk = 1u << 16;

// Mean of fn over n draws; optional sample variance out.
double mc_mean(std::uint64_t n, std::uint64_t seed,
               const std::function<double(std::mt19937_64&)>& fn,
               double* variance = nullptr);

// P(event) with binomial CI; zero hits fall back to the rule-of-three bound.
MCEstimate mc_probability(std::uint64_t n, std::uint64_t seed,
                          const std::function<bool(std::mt19937_64&)>& event);

MCEstimate binomial_estimate(std::uint64_t hits, std::uint64_t n,
                             std::uint64_t seed);

// Uniform(0,1) draw open at both ends.
inline double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa; shifted to avoid exact 0
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rct
