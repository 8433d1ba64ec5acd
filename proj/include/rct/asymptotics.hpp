#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rct/dist.hpp"
#include "rct/scaling.hpp"

namespace rct {

// X = R * S_1 ... S_n with all factors in (0,1) and R >= 0.
struct ProductModel {
  DistributionSpec r;
  std::vector<ScalingSpec> factors;

  ProductModel(DistributionSpec risk, std::vector<ScalingSpec> fs);
  double sum_alpha() const;
};

struct ApproxResult {
  double value = 0.0;
  double log_value = 0.0;
  std::string regime;      // "frechet" | "gumbel" | "weibull"
  std::string formula_id;  // names the formula used, for report traceability
};

// Fréchet case: survival(u) * prod_i E[S_i^gamma].
ApproxResult breiman_tail(const ProductModel& m, double u);

// Gumbel case: prod_i [Gamma(alpha_i+1) * Gbar_i(1 - 1/(u w(u)))] * Fbar(u).
// Refuses u with u*w(u) <= 1 (pre_asymptotic_error).
ApproxResult gumbel_product_tail(const ProductModel& m, double u);

// Weibull case (endpoint 1):
// Gamma(gamma+1)/Gamma(gamma+sum alpha+1) * prod_i [Gamma(alpha_i+1) Gbar_i(u)] * Fbar(u).
ApproxResult weibull_product_tail(const ProductModel& m, double u);

// Conditions a caller can certify for the Fréchet density-ratio limit.
enum class FrechetDensityCondition {
  factor_density_bounded,  // some y*g_i(y) bounded on (0,1)
  risk_density_regular,    // f regularly varying with the moment condition
};

// Limit of u h_n(u) / P(X_n > u); equals the tail index.
double frechet_density_ratio(const ProductModel& m,
                             FrechetDensityCondition cond,
                             std::optional<double> gamma_override = {});

// Gumbel density approximation w(u) * gumbel_product_tail(m, u).
// The caller certifies the factor-density conditions.
ApproxResult gumbel_density(const ProductModel& m, double u,
                            bool density_condition_asserted);

// Limit of u h_n(1-u) / P(X_n > 1-u) = gamma + sum alpha_i.
double weibull_density_ratio(const ProductModel& m);

struct VmRatioPrediction {
  double predicted;     // exp(-x)
  bool oracle_needed;   // the empirical ratio comes from the oracle module
};

// Predicted h_n(u + x/w(u)) / h_n(u) in the Gumbel case.
VmRatioPrediction vm_density_ratio_check(const ProductModel& m, double u,
                                         double x, bool conditions_asserted);

// Asymptotic conditional tail expectation u + 1/w(u), Gumbel class.
double cte_asymptotic(const DistributionSpec& d, double u);
double cte_asymptotic(const ProductModel& m, double u);

// CTE(q)/q at q = quantile(p); tends to 1 as p -> 1.
double cte_var_ratio(const DistributionSpec& d, double p);

// Same ratio with the level given as an exceedance probability; the quantile
// is found from log_survival, so levels far below machine epsilon still work.
double cte_var_ratio_from_exceedance(const DistributionSpec& d,
                                     double tail_prob);

}  // namespace rct
