#include "rct/risk.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/special.hpp"

namespace rct {

RiskModel::RiskModel(DistributionSpec loss, std::vector<DistributionSpec> ups,
                     std::vector<double> stock_fractions,
                     std::vector<double> bond_rates, bool subexp_asserted)
    : net_loss(std::move(loss)),
      upsilon(std::move(ups)),
      pi(std::move(stock_fractions)),
      delta(std::move(bond_rates)),
      horizon(static_cast<int>(upsilon.size())),
      subexponential_asserted(subexp_asserted) {
  if (upsilon.empty() || pi.size() != upsilon.size() ||
      delta.size() != upsilon.size())
    throw std::domain_error("RiskModel: per-period lists must have equal length >= 1");
  // tail-class requirements (Gumbel loss, Frechet Upsilon) are checked by
  // the operations that actually rely on them, so that e.g. an all-bond
  // model with a degenerate loss can still be simulated
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] >= 0.0 && pi[i] < 1.0))
      throw std::domain_error("RiskModel: pi in [0,1) required");
    if (!(delta[i] > 0.0)) throw std::domain_error("RiskModel: delta > 0 required");
  }
}

double RiskModel::s_hat(int i) const {
  return 1.0 / ((1.0 - pi[i]) * (1.0 + delta[i]));
}

ScalingSpec RiskModel::normalized_factor(int i) const {
  if (pi[i] == 0.0) return make_scaling_degenerate_one();
  if (!upsilon[i].is_frechet())
    throw std::domain_error(
        "RiskModel: Upsilon must be Frechet-class when pi > 0");
  const double c = pi[i] * s_hat(i);  // S_i/s_hat_i > t  <=>  Ups_i > c t/(1-t)
  const DistributionSpec ups = upsilon[i];
  DistributionSpec d;
  d.name = "normalized_discount_factor";
  const double ylo = ups.support_lo;
  d.support_lo = ylo > 0.0 ? ylo / (ylo + c) : 0.0;
  d.support_hi = 1.0;
  d.survival = [ups, c](double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return ups.survival(c * t / (1.0 - t));
  };
  d.log_survival = [ups, c](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return -kInf;
    return ups.log_survival(c * t / (1.0 - t));
  };
  if (ups.density) {
    d.density = [ups, c](double t) {
      if (t <= 0.0 || t >= 1.0) return 0.0;
      const double om = 1.0 - t;
      return ups.density(c * t / om) * c / (om * om);
    };
    d.log_density = [ups, c](double t) {
      if (t <= 0.0 || t >= 1.0) return -kInf;
      const double om = 1.0 - t;
      return ups.log_density(c * t / om) + std::log(c) - 2.0 * std::log(om);
    };
  }
  d.quantile = [ups, c](double p) {
    const double y = ups.quantile(p);
    return y / (y + c);
  };
  d.sampler = [ups, c](std::mt19937_64& rng) {
    const double y = ups.sampler(rng);
    return y / (y + c);
  };
  const double alpha = std::get<FrechetTail>(ups.tail).gamma;
  d.tail = WeibullTail{alpha, 1.0};
  ScalingSpec s;
  s.alpha = alpha;
  s.density_alpha_valid = static_cast<bool>(ups.density);
  s.slowly_varying = [surv = d.survival, alpha](double x) {
    return surv(1.0 - 1.0 / x) * std::pow(x, alpha);
  };
  s.dist = std::move(d);
  return s;
}

namespace {

// One period; draws Upsilon then the net loss, independent of u0.
double step(const RiskModel& m, int i, double u_prev, std::mt19937_64& rng) {
  const double ups = m.upsilon[i].sampler(rng);
  if (!(ups > 0.0)) throw std::domain_error("simulate: Upsilon sample <= 0");
  const double growth =
      (1.0 - m.pi[i]) * (1.0 + m.delta[i]) + m.pi[i] / ups;
  const double loss = m.net_loss.sampler(rng);
  return growth * u_prev - loss;
}

}  // namespace

std::vector<double> simulate_wealth_path(const RiskModel& model, double u0,
                                         std::uint64_t seed) {
  if (!(u0 >= 0.0)) throw std::domain_error("simulate: u0 >= 0 required");
  std::vector<double> path;
  path.reserve(model.horizon + 1);
  path.push_back(u0);
  std::mt19937_64 rng(mix_seed(seed, 0));
  for (int i = 0; i < model.horizon; ++i)
    path.push_back(step(model, i, path.back(), rng));
  return path;
}

RuinResult ruin_prob_mc(const RiskModel& model, double u0,
                        std::uint64_t n_paths, std::uint64_t seed) {
  if (n_paths < 10'000)
    throw std::domain_error("ruin_prob_mc: at least 1e4 paths required");
  auto ruined = [&model, u0](std::mt19937_64& rng) {
    double u = u0;
    for (int i = 0; i < model.horizon; ++i) {
      u = step(model, i, u, rng);
      if (u < 0.0) {
        // keep the draw count per path fixed for coupled comparisons
        for (int j = i + 1; j < model.horizon; ++j) {
          model.upsilon[j].sampler(rng);
          model.net_loss.sampler(rng);
        }
        return true;
      }
    }
    return false;
  };
  MCEstimate est = mc_probability(n_paths, seed, ruined);
  if (est.value < 1e-7)
    throw unreliable_region_error(
        "ruin_prob_mc: event too rare for MC; use term_sum or asymptotic");
  return RuinResult{u0, model.horizon, est, RuinMethod::montecarlo};
}

RuinResult ruin_term_sum(const RiskModel& model, double u0) {
  if (!model.subexponential_asserted)
    throw std::domain_error(
        "ruin_term_sum: net loss must be asserted subexponential");
  double sum = 0.0;
  double uk = u0;
  std::vector<ScalingSpec> factors;
  for (int k = 0; k < model.horizon; ++k) {
    uk /= model.s_hat(k);
    factors.push_back(model.normalized_factor(k));
    ProductModel pm(model.net_loss, factors);
    sum += exact_tail_nfold(pm, uk);
  }
  MCEstimate est;
  est.value = sum;
  return RuinResult{u0, model.horizon, est, RuinMethod::term_sum};
}

RuinResult ruin_asymptotic(const RiskModel& model, double u0) {
  const auto* gu = std::get_if<GumbelTail>(&model.net_loss.tail);
  if (!gu || !std::isinf(gu->endpoint))
    throw std::domain_error(
        "ruin_asymptotic: net loss must be Gumbel-class with infinite endpoint");
  double sum = 0.0;
  double uk = u0;
  double log_prod = 0.0;
  for (int k = 0; k < model.horizon; ++k) {
    uk /= model.s_hat(k);
    if (model.pi[k] > 0.0 && !model.upsilon[k].is_frechet())
      throw std::domain_error(
          "ruin_asymptotic: Upsilon must be Frechet-class when pi > 0");
    const double alpha =
        model.upsilon[k].is_frechet()
            ? std::get<FrechetTail>(model.upsilon[k].tail).gamma
            : 0.0;
    if (model.pi[k] == 0.0 && alpha > 0.0)
      throw std::domain_error(
          "ruin_asymptotic: pi = 0 with alpha > 0 makes the constant undefined");
    const double w = model.net_loss.aux_scale(uk);
    const double eta = uk * w;
    if (!(eta > 1.0))
      throw pre_asymptotic_error("ruin_asymptotic: u_k w(u_k) <= 1");
    if (model.pi[k] > 0.0) {
      log_prod += log_gamma(alpha + 1.0) -
                  alpha * std::log(model.pi[k] * model.s_hat(k)) +
                  model.upsilon[k].log_survival(eta);
    }
    sum += std::exp(model.net_loss.log_survival(uk) + log_prod);
  }
  MCEstimate est;
  est.value = sum;
  return RuinResult{u0, model.horizon, est, RuinMethod::asymptotic};
}

}  // namespace rct
