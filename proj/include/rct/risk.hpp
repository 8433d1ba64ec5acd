#pragma once

#include <cstdint>
#include <vector>

#include "rct/dist.hpp"
#include "rct/mc.hpp"
#include "rct/oracle.hpp"

namespace rct {

// Discrete-time insurance model with a bond/stock split per period.
// Wealth recursion: U_i = [(1-pi_i)(1+delta_i) + pi_i(1+Delta_i)] U_{i-1} + Z_i
// with net loss R_i = -Z_i ~ net_loss and random discount Upsilon_i = 1/(1+Delta_i).
struct RiskModel {
  DistributionSpec net_loss;              // Gumbel class, endpoint infinity
  std::vector<DistributionSpec> upsilon;  // Frechet class, one per period
  std::vector<double> pi;                 // stock fractions in [0,1)
  std::vector<double> delta;              // bond rates > 0
  int horizon = 1;
  bool subexponential_asserted = false;

  RiskModel(DistributionSpec loss, std::vector<DistributionSpec> ups,
            std::vector<double> stock_fractions, std::vector<double> bond_rates,
            bool subexp_asserted);

  // s_hat_i = 1 / ((1-pi_i)(1+delta_i))
  double s_hat(int i) const;
  // Period discount factor S_i normalized by s_hat_i; a (0,1)-valued factor.
  ScalingSpec normalized_factor(int i) const;
};

enum class RuinMethod { montecarlo, asymptotic, term_sum };

struct RuinResult {
  double u0 = 0.0;
  int n = 0;
  MCEstimate estimate;  // half_width 0 for deterministic methods
  RuinMethod method = RuinMethod::asymptotic;
};

// One wealth path U_0..U_n for a given seed.
std::vector<double> simulate_wealth_path(const RiskModel& model, double u0,
                                         std::uint64_t seed);

// P(min_i U_i < 0) over n_paths seeded paths, with binomial CI.
RuinResult ruin_prob_mc(const RiskModel& model, double u0,
                        std::uint64_t n_paths, std::uint64_t seed);

// sum_k P(R_k prod_{i<=k} S_i > u0), each term by the n-fold oracle.
RuinResult ruin_term_sum(const RiskModel& model, double u0);

// sum_k Fbar(u_k) prod_{i<=k} [Gamma(a_i+1)/(pi_i s_hat_i)^{a_i} P(Ups_i > u_k w(u_k))].
RuinResult ruin_asymptotic(const RiskModel& model, double u0);

}  // namespace rct
