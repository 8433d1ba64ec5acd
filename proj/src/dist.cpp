#include "rct/dist.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/mc.hpp"
#include "rct/quadrature.hpp"
#include "rct/special.hpp"

namespace rct {

namespace {

// Inverts a decreasing log-survival function by bisection on [lo, hi].
double invert_log_survival(const std::function<double(double)>& log_surv,
                           double target, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (log_surv(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double DistributionSpec::aux_scale(double u) const {
  const auto* g = std::get_if<GumbelTail>(&tail);
  if (!g) throw std::domain_error("aux_scale: distribution is not Gumbel-class");
  return g->aux_scale(u);
}

double DistributionSpec::tail_endpoint() const {
  if (const auto* g = std::get_if<GumbelTail>(&tail)) return g->endpoint;
  if (const auto* w = std::get_if<WeibullTail>(&tail)) return w->endpoint;
  return kInf;
}

DistributionSpec make_exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("exponential: rate > 0 required");
  DistributionSpec d;
  d.name = "exponential";
  d.support_lo = 0.0;
  d.support_hi = kInf;
  d.survival = [rate](double u) { return u <= 0.0 ? 1.0 : std::exp(-rate * u); };
  d.log_survival = [rate](double u) { return u <= 0.0 ? 0.0 : -rate * u; };
  d.density = [rate](double u) { return u < 0.0 ? 0.0 : rate * std::exp(-rate * u); };
  d.log_density = [rate](double u) {
    return u < 0.0 ? -kInf : std::log(rate) - rate * u;
  };
  d.quantile = [rate](double p) { return -std::log1p(-p) / rate; };
  d.sampler = [rate](std::mt19937_64& rng) {
    return -std::log(uniform01(rng)) / rate;
  };
  d.tail = GumbelTail{[rate](double) { return rate; }, kInf};
  return d;
}

DistributionSpec make_pareto(double gamma, double scale) {
  if (!(gamma > 0.0) || !(scale > 0.0))
    throw std::domain_error("pareto: gamma > 0 and scale > 0 required");
  DistributionSpec d;
  d.name = "pareto";
  d.support_lo = scale;
  d.support_hi = kInf;
  d.survival = [gamma, scale](double u) {
    return u <= scale ? 1.0 : std::pow(u / scale, -gamma);
  };
  d.log_survival = [gamma, scale](double u) {
    return u <= scale ? 0.0 : -gamma * std::log(u / scale);
  };
  d.density = [gamma, scale](double u) {
    return u < scale ? 0.0 : gamma / scale * std::pow(u / scale, -gamma - 1.0);
  };
  d.log_density = [gamma, scale](double u) {
    return u < scale ? -kInf
                     : std::log(gamma / scale) -
                           (gamma + 1.0) * std::log(u / scale);
  };
  d.quantile = [gamma, scale](double p) {
    return scale * std::pow(1.0 - p, -1.0 / gamma);
  };
  d.sampler = [gamma, scale](std::mt19937_64& rng) {
    return scale * std::pow(uniform01(rng), -1.0 / gamma);
  };
  d.tail = FrechetTail{gamma};
  return d;
}

DistributionSpec make_uniform01() {
  DistributionSpec d;
  d.name = "uniform01";
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  d.survival = [](double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    return 1.0 - u;
  };
  d.log_survival = [](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return -kInf;
    return std::log1p(-u);
  };
  d.density = [](double u) { return (u > 0.0 && u < 1.0) ? 1.0 : 0.0; };
  d.log_density = [](double u) { return (u > 0.0 && u < 1.0) ? 0.0 : -kInf; };
  d.quantile = [](double p) { return p; };
  d.sampler = [](std::mt19937_64& rng) { return uniform01(rng); };
  d.tail = WeibullTail{1.0, 1.0};
  return d;
}

DistributionSpec make_beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::domain_error("beta: alpha > 0 and beta > 0 required");
  DistributionSpec d;
  d.name = "beta";
  d.support_lo = 0.0;
  d.support_hi = 1.0;
  const double lnorm =
      log_gamma(alpha + beta) - log_gamma(alpha) - log_gamma(beta);
  // density ~ x^(beta-1) (1-x)^(alpha-1): alpha governs the upper endpoint
  d.survival = [alpha, beta](double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    return inc_beta(alpha, beta, 1.0 - u);
  };
  d.log_survival = [alpha, beta](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return -kInf;
    return std::log(inc_beta(alpha, beta, 1.0 - u));
  };
  d.density = [alpha, beta, lnorm](double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return std::exp(lnorm + (beta - 1.0) * std::log(u) +
                    (alpha - 1.0) * std::log1p(-u));
  };
  d.log_density = [alpha, beta, lnorm](double u) {
    if (u <= 0.0 || u >= 1.0) return -kInf;
    return lnorm + (beta - 1.0) * std::log(u) + (alpha - 1.0) * std::log1p(-u);
  };
  d.quantile = [alpha, beta](double p) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (1.0 - inc_beta(alpha, beta, 1.0 - mid) < p)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  d.sampler = [alpha, beta](std::mt19937_64& rng) {
    std::gamma_distribution<double> gb(beta, 1.0), ga(alpha, 1.0);
    const double x = gb(rng), y = ga(rng);
    return x / (x + y);
  };
  d.tail = WeibullTail{alpha, 1.0};
  return d;
}

DistributionSpec make_kotz(double K, double q, double r, double gamma) {
  if (!(K > 0.0) || !(r > 0.0) || !(gamma > 0.0))
    throw std::domain_error("kotz: K > 0, r > 0, gamma > 0 required");
  auto log_raw = [K, q, r, gamma](double u) {
    return std::log(K) + q * std::log(u) - r * std::pow(u, gamma);
  };
  double u0 = 0.0, atom = 0.0;
  if (q == 0.0) {
    if (K >= 1.0)
      u0 = std::pow(std::log(K) / r, 1.0 / gamma);
    else
      atom = 1.0 - K;
  } else if (q > 0.0) {
    const double upeak = std::pow(q / (r * gamma), 1.0 / gamma);
    if (log_raw(upeak) < 0.0)
      throw std::domain_error("kotz: survival never reaches 1 (q > 0 with too small K)");
    double hi = upeak;
    while (log_raw(hi) > 0.0) hi *= 2.0;
    u0 = invert_log_survival(log_raw, 0.0, upeak, hi);
  } else {  // q < 0: raw decreasing from +inf
    double lo = 1e-300, hi = 1.0;
    while (log_raw(hi) > 0.0) hi *= 2.0;
    u0 = invert_log_survival(log_raw, 0.0, lo, hi);
  }

  DistributionSpec d;
  d.name = "kotz";
  d.support_lo = u0;
  d.support_hi = kInf;
  d.atom_at_lo = atom;
  d.log_survival = [log_raw, u0](double u) {
    if (u <= u0) return 0.0;
    return std::min(0.0, log_raw(u));
  };
  d.survival = [d_ls = d.log_survival](double u) { return std::exp(d_ls(u)); };
  d.density = [log_raw, u0, q, r, gamma](double u) {
    if (u <= u0) return 0.0;
    const double slope = r * gamma * std::pow(u, gamma - 1.0) - q / u;
    return std::exp(log_raw(u)) * std::max(0.0, slope);
  };
  d.log_density = [log_raw, u0, q, r, gamma](double u) {
    if (u <= u0) return -kInf;
    const double slope = r * gamma * std::pow(u, gamma - 1.0) - q / u;
    return slope <= 0.0 ? -kInf : log_raw(u) + std::log(slope);
  };
  d.quantile = [log_raw, u0, K, q, r, gamma](double p) {
    const double ls = std::log1p(-p);  // target log-survival
    if (ls >= std::min(0.0, log_raw(u0 > 0.0 ? u0 : 1e-300))) return u0;
    if (q == 0.0) return std::pow((std::log(K) - ls) / r, 1.0 / gamma);
    double hi = std::max(1.0, 2.0 * u0);
    while (log_raw(hi) > ls) hi *= 2.0;
    return invert_log_survival(log_raw, ls, u0, hi);
  };
  d.sampler = [qf = d.quantile](std::mt19937_64& rng) {
    return qf(uniform01(rng));
  };
  d.tail = GumbelTail{
      [r, gamma](double u) { return r * gamma * std::pow(u, gamma - 1.0); },
      kInf};
  return d;
}

DistributionSpec make_near_one_exp(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw std::domain_error("near_one_exp: c1 > 0 and c2 > 0 required");
  auto log_raw = [c1, c2](double u) { return std::log(c1) - c2 / (1.0 - u); };
  double u0 = 0.0, atom = 0.0;
  if (std::log(c1) > c2)
    u0 = 1.0 - c2 / std::log(c1);
  else
    atom = 1.0 - c1 * std::exp(-c2);

  DistributionSpec d;
  d.name = "near_one_exp";
  d.support_lo = u0;
  d.support_hi = 1.0;
  d.atom_at_lo = atom;
  d.log_survival = [log_raw, u0](double u) {
    if (u <= u0) return 0.0;
    if (u >= 1.0) return -kInf;
    return std::min(0.0, log_raw(u));
  };
  d.survival = [ls = d.log_survival](double u) { return std::exp(ls(u)); };
  d.density = [log_raw, u0, c2](double u) {
    if (u <= u0 || u >= 1.0) return 0.0;
    const double om = 1.0 - u;
    return std::exp(log_raw(u)) * c2 / (om * om);
  };
  d.log_density = [log_raw, u0, c2](double u) {
    if (u <= u0 || u >= 1.0) return -kInf;
    const double om = 1.0 - u;
    return log_raw(u) + std::log(c2) - 2.0 * std::log(om);
  };
  d.quantile = [c1, c2, u0, log_raw](double p) {
    const double ls = std::log1p(-p);
    if (ls >= log_raw(u0)) return u0;
    return 1.0 - c2 / (std::log(c1) - ls);
  };
  d.sampler = [qf = d.quantile](std::mt19937_64& rng) {
    return qf(uniform01(rng));
  };
  d.tail = GumbelTail{
      [c2](double u) { return c2 / ((1.0 - u) * (1.0 - u)); }, 1.0};
  return d;
}

DistributionSpec make_lognormal(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("lognormal: sigma > 0 required");
  DistributionSpec d;
  d.name = "lognormal";
  d.support_lo = 0.0;
  d.support_hi = kInf;
  d.survival = [mu, sigma](double u) {
    return u <= 0.0 ? 1.0 : norm_sf((std::log(u) - mu) / sigma);
  };
  d.log_survival = [mu, sigma](double u) {
    if (u <= 0.0) return 0.0;
    const double z = (std::log(u) - mu) / sigma;
    if (z < 30.0) return std::log(norm_sf(z));
    // Mills-ratio asymptotics where erfc underflows
    return -0.5 * z * z - std::log(z) - 0.5 * std::log(2.0 * M_PI) +
           std::log1p(-1.0 / (z * z));
  };
  d.density = [mu, sigma](double u) {
    if (u <= 0.0) return 0.0;
    const double z = (std::log(u) - mu) / sigma;
    return std::exp(-0.5 * z * z) / (u * sigma * std::sqrt(2.0 * M_PI));
  };
  d.log_density = [mu, sigma](double u) {
    if (u <= 0.0) return -kInf;
    const double z = (std::log(u) - mu) / sigma;
    return -0.5 * z * z - std::log(u * sigma) - 0.5 * std::log(2.0 * M_PI);
  };
  d.quantile = [mu, sigma](double p) {
    return std::exp(mu + sigma * norm_sf_inv(1.0 - p));
  };
  d.sampler = [mu, sigma](std::mt19937_64& rng) {
    return std::exp(mu + sigma * norm_sf_inv(1.0 - uniform01(rng)));
  };
  // reciprocal mean excess, valid for u well above exp(mu)
  d.tail = GumbelTail{[mu, sigma](double u) {
                        const double z = std::max(std::log(u) - mu, 1e-3);
                        return z / (sigma * sigma * u);
                      },
                      kInf};
  return d;
}

DistributionSpec make_degenerate(double s0) {
  if (!(s0 >= 0.0)) throw std::domain_error("degenerate: point >= 0 required");
  DistributionSpec d;
  d.name = "degenerate";
  d.support_lo = s0;
  d.support_hi = s0;
  d.atom_at_lo = 1.0;
  d.survival = [s0](double u) { return u < s0 ? 1.0 : 0.0; };
  d.log_survival = [s0](double u) { return u < s0 ? 0.0 : -kInf; };
  d.quantile = [s0](double) { return s0; };
  d.sampler = [s0](std::mt19937_64&) { return s0; };
  d.tail = WeibullTail{0.0, s0};
  return d;
}

namespace {

double req(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw config_error("missing parameter: " + key);
  return it->second;
}

double opt_param(const std::map<std::string, double>& p, const std::string& key,
                 double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

}  // namespace

DistributionSpec make_builtin(const std::string& family,
                              const std::map<std::string, double>& params) {
  if (family == "exponential") return make_exponential(req(params, "rate"));
  if (family == "pareto")
    return make_pareto(req(params, "gamma"), opt_param(params, "scale", 1.0));
  if (family == "uniform01") return make_uniform01();
  if (family == "beta") return make_beta(req(params, "alpha"), req(params, "beta"));
  if (family == "kotz" || family == "kotztype")
    return make_kotz(opt_param(params, "K", 1.0), opt_param(params, "q", 0.0),
                     req(params, "r"), req(params, "gamma"));
  if (family == "near_one_exp" || family == "nearoneexp")
    return make_near_one_exp(req(params, "c1"), req(params, "c2"));
  if (family == "lognormal")
    return make_lognormal(opt_param(params, "mu", 0.0), req(params, "sigma"));
  if (family == "degenerate") return make_degenerate(req(params, "value"));
  throw config_error("unknown distribution family: " + family);
}

DistributionSpec power_scale(const DistributionSpec& d, double c, double p) {
  if (!(c > 0.0) || !(p > 0.0))
    throw std::domain_error("power_scale: c > 0 and p > 0 required");
  DistributionSpec out;
  out.name = d.name + "^scaled";
  auto back = [c, p](double u) { return std::pow(u / c, 1.0 / p); };
  out.support_lo = c * std::pow(d.support_lo, p);
  out.support_hi = std::isinf(d.support_hi) ? kInf : c * std::pow(d.support_hi, p);
  out.atom_at_lo = d.atom_at_lo;
  out.survival = [d, back](double u) {
    return u <= 0.0 ? 1.0 : d.survival(back(u));
  };
  out.log_survival = [d, back](double u) {
    return u <= 0.0 ? 0.0 : d.log_survival(back(u));
  };
  if (d.density) {
    out.density = [d, back, c, p](double u) {
      if (u <= 0.0) return 0.0;
      const double w = back(u);
      return d.density(w) * w / (p * u);
    };
    out.log_density = [d, back, c, p](double u) {
      if (u <= 0.0) return -kInf;
      const double w = back(u);
      return d.log_density(w) + std::log(w) - std::log(p * u);
    };
  }
  out.quantile = [d, c, p](double pr) { return c * std::pow(d.quantile(pr), p); };
  out.sampler = [d, c, p](std::mt19937_64& rng) {
    return c * std::pow(d.sampler(rng), p);
  };
  if (const auto* fr = std::get_if<FrechetTail>(&d.tail)) {
    out.tail = FrechetTail{fr->gamma / p};
  } else if (const auto* gu = std::get_if<GumbelTail>(&d.tail)) {
    const double ep =
        std::isinf(gu->endpoint) ? kInf : c * std::pow(gu->endpoint, p);
    out.tail = GumbelTail{[w0 = gu->aux_scale, c, p, back](double u) {
                            const double t = back(u);
                            return w0(t) * t / (p * u);
                          },
                          ep};
  } else {
    const auto& we = std::get<WeibullTail>(d.tail);
    out.tail = WeibullTail{we.gamma, c * std::pow(we.endpoint, p)};
  }
  return out;
}

double mean_excess(const DistributionSpec& d, double u) {
  if (!(u < d.support_hi))
    throw std::domain_error("mean_excess: u must be below the upper endpoint");
  const double ls0 = d.log_survival(u);
  if (!std::isfinite(ls0))
    throw unreliable_region_error("mean_excess: survival underflowed at u");
  auto scaled = [&d, ls0](double t) {
    const double ls = d.log_survival(t);
    return std::isfinite(ls) ? std::exp(ls - ls0) : 0.0;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  if (std::isinf(d.support_hi)) return integrate_to_inf_or_throw(scaled, u, opt);
  return integrate_or_throw(scaled, u, d.support_hi, opt);
}

std::function<double(double)> aux_scale_from_mean_excess(
    const DistributionSpec& d) {
  return [d](double u) { return 1.0 / mean_excess(d, u); };
}

}  // namespace rct
