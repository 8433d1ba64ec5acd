#include <algorithm>
#include <cmath>

#include "rct/mc.hpp"

namespace rct {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double mc_mean(std::uint64_t n, std::uint64_t seed,
               const std::function<double(std::mt19937_64&)>& fn,
               double* variance) {
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t done = 0, chunk = 0;
  while (done < n) {
    const std::uint64_t m = std::min<std::uint64_t>(kMcChunk, n - done);
    std::mt19937_64 rng(mix_seed(seed, chunk));
    double csum = 0.0, csumsq = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      const double v = fn(rng);
      csum += v;
      csumsq += v * v;
    }
    sum += csum;
    sumsq += csumsq;
    done += m;
    ++chunk;
  }
  const double mean = sum / static_cast<double>(n);
  if (variance) {
    const double nn = static_cast<double>(n);
    *variance = std::max(0.0, (sumsq - nn * mean * mean) / (nn - 1.0));
  }
  return mean;
}

MCEstimate mc_probability(std::uint64_t n, std::uint64_t seed,
                          const std::function<bool(std::mt19937_64&)>& event) {
  std::uint64_t hits = 0, done = 0, chunk = 0;
  while (done < n) {
    const std::uint64_t m = std::min<std::uint64_t>(kMcChunk, n - done);
    std::mt19937_64 rng(mix_seed(seed, chunk));
    std::uint64_t chits = 0;
    for (std::uint64_t i = 0; i < m; ++i)
      if (event(rng)) ++chits;
    hits += chits;
    done += m;
    ++chunk;
  }
  return binomial_estimate(hits, n, seed);
}

MCEstimate binomial_estimate(std::uint64_t hits, std::uint64_t n,
                             std::uint64_t seed) {
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  MCEstimate est;
  est.n_samples = n;
  est.seed = seed;
  est.value = p;
  if (hits == 0) {
    est.half_width_95 = 3.0 / nn;  // rule of three, one-sided
  } else if (hits == n) {
    est.half_width_95 = 3.0 / nn;
  } else {
    est.half_width_95 = 1.959963984540054 * std::sqrt(p * (1.0 - p) / nn);
    // clip so the interval stays inside [0,1]
    est.half_width_95 = std::min({est.half_width_95, p, 1.0 - p});
  }
  return est;
}

}  // namespace rct
