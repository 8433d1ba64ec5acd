#pragma once

#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <variant>

namespace rct {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Max-domain-of-attraction tag carried by a distribution.
struct FrechetTail {
  double gamma;  // > 0, tail index
};

struct GumbelTail {
  std::function<double(double)> aux_scale;  // scaling function w(u) > 0
  double endpoint = kInf;                   // upper endpoint, may be +inf
};

struct WeibullTail {
  double gamma;            // >= 0
  double endpoint = 1.0;   // finite; builtins are normalized to 1
};

using TailClass = std::variant<FrechetTail, GumbelTail, WeibullTail>;

// A positive risk with enough structure to drive tail formulas:
// survival (plus a log-scale variant for the deep tail), optional density,
// quantile, and a seeded sampler.
struct DistributionSpec {
  std::function<double(double)> survival;
  std::function<double(double)> log_survival;
  std::function<double(double)> density;      // may be empty
  std::function<double(double)> log_density;  // may be empty
  std::function<double(double)> quantile;     // p in (0,1)
  std::function<double(std::mt19937_64&)> sampler;
  double support_lo = 0.0;
  double support_hi = kInf;
  double atom_at_lo = 0.0;  // point mass at support_lo, usually 0
  TailClass tail;
  std::string name;

  bool has_density() const { return static_cast<bool>(density); }
  bool is_frechet() const { return std::holds_alternative<FrechetTail>(tail); }
  bool is_gumbel() const { return std::holds_alternative<GumbelTail>(tail); }
  bool is_weibull() const { return std::holds_alternative<WeibullTail>(tail); }

  // Gumbel-class scaling function; throws for other classes.
  double aux_scale(double u) const;
  // Upper endpoint as declared by the tail class (support_hi for Frechet).
  double tail_endpoint() const;
};

// Builtin families.
DistributionSpec make_exponential(double rate);
DistributionSpec make_pareto(double gamma, double scale);
DistributionSpec make_uniform01();
// Paper-order beta: alpha is the exponent at the UPPER endpoint, i.e. the
// density is proportional to x^(beta-1) (1-x)^(alpha-1). This is the mirror
// image of the common parametrization; it makes P(S > 1-u) ~ C u^alpha.
DistributionSpec make_beta(double alpha, double beta);
// Survival K u^q exp(-r u^gamma), clamped to [0,1]; Gumbel class with
// w(u) = r gamma u^(gamma-1).
DistributionSpec make_kotz(double K, double q, double r, double gamma);
// Survival c1 exp(-c2/(1-u)) on (0,1); Gumbel class with w(u) = c2/(1-u)^2.
DistributionSpec make_near_one_exp(double c1, double c2);
DistributionSpec make_lognormal(double mu, double sigma);
// Point mass at s0 (used for degenerate scaling factors).
DistributionSpec make_degenerate(double s0);

// Name + parameter-map front end used by the config layer.
DistributionSpec make_builtin(const std::string& family,
                              const std::map<std::string, double>& params);

// Distribution of c * W^p; stays in the same max-domain family.
DistributionSpec power_scale(const DistributionSpec& d, double c, double p);

// E[R - u | R > u] by quadrature of the survival function.
double mean_excess(const DistributionSpec& d, double u);

// u -> 1 / mean_excess(d, u); a scaling function when none is in closed form.
std::function<double(double)> aux_scale_from_mean_excess(
    const DistributionSpec& d);

}  // namespace rct
