#include "rct/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/quadrature.hpp"
#include "rct/special.hpp"

namespace rct {

ProductModel::ProductModel(DistributionSpec risk, std::vector<ScalingSpec> fs)
    : r(std::move(risk)), factors(std::move(fs)) {
  if (r.support_lo < 0.0)
    throw std::domain_error(
        "ProductModel: two-sided risks are not supported by the product formulas");
  if (factors.empty())
    throw std::domain_error("ProductModel: at least one factor required");
  for (const auto& f : factors)
    if (f.dist.support_lo < 0.0 || f.dist.support_hi > 1.0)
      throw std::domain_error("ProductModel: factor support must lie in (0,1]");
}

double ProductModel::sum_alpha() const {
  double s = 0.0;
  for (const auto& f : factors) s += f.alpha;
  return s;
}

namespace {

// E[S^gamma] = int_0^1 P(S^gamma > t) dt; survival-based, so degenerate
// factors work too.
double factor_moment(const ScalingSpec& f, double gamma) {
  if (gamma == 0.0) return 1.0;
  auto integrand = [&f, gamma](double t) {
    return f.dist.survival(std::pow(t, 1.0 / gamma));
  };
  QuadOptions opt;
  opt.rel_tol = 1e-11;
  return integrate_or_throw(integrand, 0.0, 1.0, opt);
}

// Summation order must not depend on factor order, so that reordering the
// factors reproduces log_value bit-for-bit.
double sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

ApproxResult from_log(double log_value, std::string regime, std::string id) {
  ApproxResult r;
  r.log_value = log_value;
  r.value = std::exp(log_value);
  r.regime = std::move(regime);
  r.formula_id = std::move(id);
  return r;
}

}  // namespace

ApproxResult breiman_tail(const ProductModel& m, double u) {
  const auto* fr = std::get_if<FrechetTail>(&m.r.tail);
  if (!fr) throw std::domain_error("breiman_tail: risk must be Frechet-class");
  std::vector<double> terms;
  for (const auto& f : m.factors)
    terms.push_back(std::log(factor_moment(f, fr->gamma)));
  return from_log(m.r.log_survival(u) + sorted_sum(std::move(terms)), "frechet",
                  "breiman-product-tail");
}

ApproxResult gumbel_product_tail(const ProductModel& m, double u) {
  const auto* gu = std::get_if<GumbelTail>(&m.r.tail);
  if (!gu) throw std::domain_error("gumbel_product_tail: risk must be Gumbel-class");
  if (!(u < gu->endpoint))
    throw std::domain_error("gumbel_product_tail: u must be below the endpoint");
  const double eta = u * gu->aux_scale(u);
  if (!(eta > 1.0))
    throw pre_asymptotic_error(
        "gumbel_product_tail: u*w(u) <= 1, pre-asymptotic region");
  std::vector<double> terms;
  for (const auto& f : m.factors)
    terms.push_back(log_gamma(f.alpha + 1.0) + f.log_tail_at(eta));
  return from_log(m.r.log_survival(u) + sorted_sum(std::move(terms)), "gumbel",
                  "gumbel-product-tail");
}

ApproxResult weibull_product_tail(const ProductModel& m, double u) {
  const auto* we = std::get_if<WeibullTail>(&m.r.tail);
  if (!we) throw std::domain_error("weibull_product_tail: risk must be Weibull-class");
  if (we->endpoint != 1.0)
    throw std::domain_error(
        "weibull_product_tail: endpoint must be normalized to 1 (use power_scale)");
  if (!(u > 0.0)) throw std::domain_error("weibull_product_tail: u > 0 required");
  std::vector<double> alphas, terms;
  for (const auto& f : m.factors) {
    alphas.push_back(f.alpha);
    terms.push_back(log_gamma(f.alpha + 1.0) + f.dist.log_survival(u));
  }
  const double log_value = m.r.log_survival(u) + log_gamma(we->gamma + 1.0) -
                           log_gamma(we->gamma + sorted_sum(alphas) + 1.0) +
                           sorted_sum(std::move(terms));
  return from_log(log_value, "weibull", "weibull-product-tail");
}

double frechet_density_ratio(const ProductModel& m, FrechetDensityCondition,
                             std::optional<double> gamma_override) {
  if (gamma_override) {
    if (*gamma_override < 0.0)
      throw std::domain_error("frechet_density_ratio: gamma must be >= 0");
    return *gamma_override;
  }
  const auto* fr = std::get_if<FrechetTail>(&m.r.tail);
  if (!fr)
    throw std::domain_error(
        "frechet_density_ratio: risk must be Frechet-class (or pass gamma)");
  return fr->gamma;
}

ApproxResult gumbel_density(const ProductModel& m, double u,
                            bool density_condition_asserted) {
  if (!density_condition_asserted)
    throw std::domain_error(
        "gumbel_density: factor-density condition must be asserted");
  ApproxResult tail = gumbel_product_tail(m, u);
  const double w = m.r.aux_scale(u);
  return from_log(tail.log_value + std::log(w), "gumbel",
                  "gumbel-product-density");
}

double weibull_density_ratio(const ProductModel& m) {
  const auto* we = std::get_if<WeibullTail>(&m.r.tail);
  if (!we) throw std::domain_error("weibull_density_ratio: risk must be Weibull-class");
  bool ok = false;
  for (const auto& f : m.factors)
    if (f.density_alpha_valid && f.alpha > 0.0) ok = true;
  if (!ok)
    throw std::domain_error(
        "weibull_density_ratio: needs a factor with a valid density exponent");
  return we->gamma + m.sum_alpha();
}

VmRatioPrediction vm_density_ratio_check(const ProductModel& m, double u,
                                         double x, bool conditions_asserted) {
  if (!conditions_asserted)
    throw std::domain_error(
        "vm_density_ratio_check: density stability conditions must be asserted");
  if (!m.r.is_gumbel())
    throw std::domain_error("vm_density_ratio_check: risk must be Gumbel-class");
  (void)u;
  return {std::exp(-x), true};
}

double cte_asymptotic(const DistributionSpec& d, double u) {
  const auto* gu = std::get_if<GumbelTail>(&d.tail);
  if (!gu) throw std::domain_error("cte_asymptotic: Gumbel class required");
  return u + 1.0 / gu->aux_scale(u);
}

double cte_asymptotic(const ProductModel& m, double u) {
  // same scaling function as the base risk: the mean excess is
  // asymptotically invariant under contraction
  return cte_asymptotic(m.r, u);
}

double cte_var_ratio_from_exceedance(const DistributionSpec& d,
                                     double tail_prob) {
  if (!(tail_prob > 0.0 && tail_prob < 1.0))
    throw std::domain_error(
        "cte_var_ratio_from_exceedance: tail_prob in (0,1) required");
  const double target = std::log(tail_prob);
  // bracket the quantile on log_survival, then bisect
  double lo = std::max(d.support_lo, 0.0);
  double hi = std::isfinite(d.support_hi) ? d.support_hi
                                          : std::max(1.0, 2.0 * lo + 1.0);
  if (!std::isfinite(d.support_hi)) {
    while (d.log_survival(hi) > target) {
      hi *= 2.0;
      if (hi > 1e300)
        throw std::domain_error(
            "cte_var_ratio_from_exceedance: quantile bracket failed");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d.log_survival(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  const double q = 0.5 * (lo + hi);
  if (!(q > 0.0))
    throw std::domain_error(
        "cte_var_ratio_from_exceedance: quantile must be positive");
  return cte_asymptotic(d, q) / q;
}

double cte_var_ratio(const DistributionSpec& d, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("cte_var_ratio: p in (0,1) required");
  const double q = d.quantile(p);
  if (!(q > 0.0)) throw std::domain_error("cte_var_ratio: quantile must be positive");
  return cte_asymptotic(d, q) / q;
}

}  // namespace rct
