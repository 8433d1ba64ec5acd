#pragma once

#include <functional>

#include "rct/dist.hpp"

namespace rct {

// A (0,1)-valued contraction factor with regular-variation data at 1:
// survival(1 - 1/x) = x^(-alpha) * slowly_varying(x) for large x.
struct ScalingSpec {
  DistributionSpec dist;
  double alpha = 0.0;
  std::function<double(double)> slowly_varying;
  bool density_alpha_valid = false;

  // Survival of the factor at 1 - 1/x, in logs; convenience for formulas.
  double log_tail_at(double x) const { return dist.log_survival(1.0 - 1.0 / x); }
};

ScalingSpec make_scaling_uniform01();
ScalingSpec make_scaling_beta(double alpha, double beta);
ScalingSpec make_scaling_degenerate_one();
// S with S^2 ~ beta(1/2,1/2): density 2/(pi sqrt(1-s^2)) on (0,1).
ScalingSpec make_scaling_spherical();
// Wrap a user-supplied distribution with declared regular-variation data.
ScalingSpec make_scaling(DistributionSpec dist, double alpha,
                         std::function<double(double)> slowly_varying,
                         bool density_alpha_valid);

ScalingSpec make_scaling_builtin(const std::string& family,
                                 const std::map<std::string, double>& params);

}  // namespace rct
