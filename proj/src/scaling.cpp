#include "rct/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/mc.hpp"
#include "rct/special.hpp"

namespace rct {

ScalingSpec make_scaling_uniform01() {
  ScalingSpec s;
  s.dist = make_uniform01();
  s.alpha = 1.0;
  s.slowly_varying = [](double) { return 1.0; };
  s.density_alpha_valid = true;
  return s;
}

ScalingSpec make_scaling_beta(double alpha, double beta) {
  ScalingSpec s;
  s.dist = make_beta(alpha, beta);
  s.alpha = alpha;
  const double c = std::exp(log_gamma(alpha + beta) - log_gamma(alpha + 1.0) -
                            log_gamma(beta));
  s.slowly_varying = [c](double) { return c; };
  s.density_alpha_valid = true;
  return s;
}

ScalingSpec make_scaling_degenerate_one() {
  ScalingSpec s;
  s.dist = make_degenerate(1.0);
  // survival(1 - 1/x) = 1 for all x: alpha = 0 with L = 1
  s.alpha = 0.0;
  s.slowly_varying = [](double) { return 1.0; };
  s.density_alpha_valid = false;
  return s;
}

ScalingSpec make_scaling_spherical() {
  DistributionSpec d;
  d.name = "spherical_factor";
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  d.survival = [](double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    return (2.0 / M_PI) * std::acos(s);
  };
  d.log_survival = [sv = d.survival](double s) {
    const double v = sv(s);
    return v > 0.0 ? std::log(v) : -kInf;
  };
  d.density = [](double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 2.0 / (M_PI * std::sqrt((1.0 - s) * (1.0 + s)));
  };
  d.log_density = [](double s) {
    if (s <= 0.0 || s >= 1.0) return -kInf;
    return std::log(2.0 / M_PI) - 0.5 * std::log((1.0 - s) * (1.0 + s));
  };
  d.quantile = [](double p) { return std::sin(0.5 * M_PI * p); };
  d.sampler = [](std::mt19937_64& rng) {
    return std::sin(0.5 * M_PI * uniform01(rng));
  };
  d.tail = WeibullTail{0.5, 1.0};
  ScalingSpec s;
  s.dist = std::move(d);
  s.alpha = 0.5;
  s.slowly_varying = [](double) { return 2.0 * std::sqrt(2.0) / M_PI; };
  s.density_alpha_valid = true;
  return s;
}

ScalingSpec make_scaling(DistributionSpec dist, double alpha,
                         std::function<double(double)> slowly_varying,
                         bool density_alpha_valid) {
  if (!(dist.support_lo >= 0.0) || !(dist.support_hi <= 1.0))
    throw std::domain_error("scaling factor must be supported in (0,1)");
  if (alpha < 0.0) throw std::domain_error("scaling alpha must be >= 0");
  ScalingSpec s;
  s.dist = std::move(dist);
  s.alpha = alpha;
  s.slowly_varying = std::move(slowly_varying);
  s.density_alpha_valid = density_alpha_valid;
  return s;
}

ScalingSpec make_scaling_builtin(const std::string& family,
                                 const std::map<std::string, double>& params) {
  if (family == "uniform01") return make_scaling_uniform01();
  if (family == "beta") {
    auto a = params.find("alpha"), b = params.find("beta");
    if (a == params.end() || b == params.end())
      throw config_error("beta scaling: alpha and beta required");
    return make_scaling_beta(a->second, b->second);
  }
  if (family == "spherical") return make_scaling_spherical();
  if (family == "degenerate_one") return make_scaling_degenerate_one();
  throw config_error("unknown scaling family: " + family);
}

}  // namespace rct
