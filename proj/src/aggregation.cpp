#include "rct/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/mc.hpp"
#include "rct/special.hpp"

namespace rct {

ScaleMixture::ScaleMixture(DistributionSpec radius, ScalingSpec factor,
                           SignLaw sign_law)
    : r(std::move(radius)), s(std::move(factor)), signs(sign_law) {
  const double sum = signs.p_pp + signs.p_pm + signs.p_mp + signs.p_mm;
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::domain_error("ScaleMixture: sign probabilities must sum to 1");
  if (signs.p_pp < 0 || signs.p_pm < 0 || signs.p_mp < 0 || signs.p_mm < 0)
    throw std::domain_error("ScaleMixture: negative sign probability");
  if (!(signs.p_pp > 0.0))
    throw std::domain_error("ScaleMixture: q11 = P(I1=1,I2=1) must be positive");
  if (s.dist.support_lo < 0.0 || s.dist.support_hi > 1.0)
    throw std::domain_error("ScaleMixture: factor support must lie in [0,1]");
}

ScaleMixture make_spherical_mixture(DistributionSpec radius) {
  ScaleMixture m(std::move(radius), make_scaling_spherical(), SignLaw{});
  m.spherical = true;
  return m;
}

LocalGSpec make_local_spec_from_density(const ScalingSpec& s, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("make_local_spec: rho in (0,1) required");
  if (!s.dist.has_density())
    throw std::domain_error("make_local_spec: factor density required");
  const double g = s.dist.density(rho);
  if (!(g > 0.0))
    throw std::domain_error("make_local_spec: density must be positive at rho");
  LocalGSpec spec;
  spec.alpha_rho = 1.0;
  spec.L_rho = [g](double) { return 2.0 * g; };
  spec.rho = rho;
  return spec;
}

LocalGSpec make_local_spec_spherical(double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("make_local_spec: rho in (0,1) required");
  LocalGSpec spec;
  spec.alpha_rho = 1.0;
  const double g = 2.0 / (M_PI * std::sqrt(1.0 - rho * rho));
  spec.L_rho = [g](double) { return 2.0 * g; };
  spec.rho = rho;
  return spec;
}

namespace {

void check_local_spec(const LocalGSpec& spec) {
  if (!(spec.rho > 0.0 && spec.rho < 1.0))
    throw std::domain_error("LocalGSpec: rho in (0,1) required");
  if (spec.alpha_rho < 0.0)
    throw std::domain_error("LocalGSpec: alpha_rho >= 0 required");
  if (!spec.L_rho) throw std::domain_error("LocalGSpec: L_rho required");
  if (spec.alpha_rho == 0.0) {
    // the tail statement needs L_rho(0+) = 0 in this case
    double prev = kInf;
    for (double t = 1e-2; t >= 1e-6; t *= 0.1) {
      const double v = spec.L_rho(t);
      if (!(v < prev) || !(v >= 0.0))
        throw std::domain_error(
            "LocalGSpec: alpha_rho = 0 requires L_rho decreasing to 0 at 0+");
      prev = v;
    }
    if (!(prev < 0.1 * spec.L_rho(1e-2)))
      throw std::domain_error("LocalGSpec: L_rho(0+) = 0 not satisfied");
  }
}

struct SignPair {
  double i1, i2;
};

SignPair draw_signs(const SignLaw& law, std::mt19937_64& rng) {
  const double v = uniform01(rng);
  if (v < law.p_pp) return {1.0, 1.0};
  if (v < law.p_pp + law.p_pm) return {1.0, -1.0};
  if (v < law.p_pp + law.p_pm + law.p_mp) return {-1.0, 1.0};
  return {-1.0, -1.0};
}

// Fills out[i] for i in [0, n) chunk-by-chunk; each chunk has its own
// generator so the result is independent of scheduling.
template <class Fn>
void chunked_fill(std::uint64_t n, std::uint64_t seed, Fn&& per_draw) {
  const std::uint64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(mix_seed(seed, c));
    const std::uint64_t hi = std::min(n, (c + 1) * kMcChunk);
    for (std::uint64_t i = c * kMcChunk; i < hi; ++i) per_draw(i, rng);
  }
}

}  // namespace

std::vector<PairSample> sample_pair(const ScaleMixture& mix, double rho,
                                    std::uint64_t n, std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("sample_pair: rho in (0,1) required");
  const double c2 = std::sqrt(1.0 - rho * rho);
  std::vector<PairSample> out(n);
  chunked_fill(n, seed, [&](std::uint64_t i, std::mt19937_64& rng) {
    const double r = mix.r.sampler(rng);
    const double s = mix.s.dist.sampler(rng);
    const SignPair sg = draw_signs(mix.signs, rng);
    const double u1 = r * sg.i1 * s;
    const double u2 = r * sg.i2 * std::sqrt(std::max(0.0, 1.0 - s * s));
    out[i] = PairSample{u1, rho * u1 + c2 * u2};
  });
  return out;
}

std::vector<double> sample_s_rho(const ScaleMixture& mix, double rho,
                                 std::uint64_t n, std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("sample_s_rho: rho in (0,1) required");
  const double c2 = std::sqrt(1.0 - rho * rho);
  std::vector<double> out(n);
  chunked_fill(n, seed, [&](std::uint64_t i, std::mt19937_64& rng) {
    const double s = mix.s.dist.sampler(rng);
    const SignPair sg = draw_signs(mix.signs, rng);
    out[i] = rho * sg.i1 * s +
             c2 * sg.i2 * std::sqrt(std::max(0.0, 1.0 - s * s));
  });
  return out;
}

double s_rho_tail(const LocalGSpec& spec, double q11, double u, double window) {
  check_local_spec(spec);
  if (!(q11 > 0.0 && q11 <= 1.0))
    throw std::domain_error("s_rho_tail: q11 in (0,1] required");
  if (!(u > 0.0 && u < window))
    throw pre_asymptotic_error("s_rho_tail: u outside the local window");
  const double base = 2.0 * u * (1.0 - spec.rho * spec.rho);
  return q11 * spec.L_rho(std::sqrt(u)) *
         std::pow(base, 0.5 * spec.alpha_rho);
}

ApproxResult u_rho_tail_gumbel(const ScaleMixture& mix, const LocalGSpec& spec,
                               double u, double window) {
  check_local_spec(spec);
  if (!mix.r.is_gumbel())
    throw std::domain_error("u_rho_tail_gumbel: Gumbel-class radius required");
  const double eta = u * mix.r.aux_scale(u);
  if (!(eta > 0.0) || !(1.0 / std::sqrt(eta) <= window))
    throw pre_asymptotic_error(
        "u_rho_tail_gumbel: u w(u) too small for the local window");
  const double a = spec.alpha_rho;
  const double lv = std::log(mix.q11()) + log_gamma(0.5 * a + 1.0) +
                    std::log(spec.L_rho(1.0 / std::sqrt(eta))) +
                    0.5 * a * std::log(2.0 * (1.0 - spec.rho * spec.rho) / eta) +
                    mix.r.log_survival(u);
  ApproxResult res;
  res.log_value = lv;
  res.value = std::exp(lv);
  res.regime = "gumbel";
  res.formula_id = "gumbel-mixture-tail";
  return res;
}

ApproxResult u_rho_tail_weibull(const ScaleMixture& mix, const LocalGSpec& spec,
                                double u, double window) {
  check_local_spec(spec);
  const auto* we = std::get_if<WeibullTail>(&mix.r.tail);
  if (!we || !(we->gamma > 0.0))
    throw std::domain_error(
        "u_rho_tail_weibull: Weibull-class radius with gamma > 0 required");
  if (we->endpoint != 1.0)
    throw std::domain_error("u_rho_tail_weibull: endpoint must be 1");
  const double v = 1.0 - u;  // distance to the endpoint
  if (!(v > 0.0 && v < window))
    throw pre_asymptotic_error("u_rho_tail_weibull: u outside the local window");
  const double a = spec.alpha_rho, g = we->gamma;
  const double lv = std::log(mix.q11()) + log_gamma(0.5 * a + 1.0) +
                    log_gamma(g + 1.0) - log_gamma(0.5 * a + g + 1.0) +
                    std::log(spec.L_rho(std::sqrt(v))) +
                    0.5 * a * std::log(2.0 * v * (1.0 - spec.rho * spec.rho)) +
                    mix.r.log_survival(u);
  ApproxResult res;
  res.log_value = lv;
  res.value = std::exp(lv);
  res.regime = "weibull";
  res.formula_id = "weibull-mixture-tail";
  return res;
}

BermanCheckResult berman_identity_check(const ScaleMixture& mix, double c1,
                                        double c2, std::uint64_t n,
                                        std::uint64_t seed) {
  if (n < 2) throw std::domain_error("berman_identity_check: n >= 2 required");
  const double scale = std::hypot(c1, c2);
  std::vector<double> a(n), b(n);
  chunked_fill(n, seed, [&](std::uint64_t i, std::mt19937_64& rng) {
    const double r = mix.r.sampler(rng);
    const double s = mix.s.dist.sampler(rng);
    const SignPair sg = draw_signs(mix.signs, rng);
    a[i] = r * (c1 * sg.i1 * s +
                c2 * sg.i2 * std::sqrt(std::max(0.0, 1.0 - s * s)));
  });
  chunked_fill(n, seed ^ 0x5bf0'3635'dcf6'6e5bull,
               [&](std::uint64_t i, std::mt19937_64& rng) {
                 const double r = mix.r.sampler(rng);
                 const double s = mix.s.dist.sampler(rng);
                 const SignPair sg = draw_signs(mix.signs, rng);
                 b[i] = scale * r * sg.i1 * s;
               });
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // sup |F_a - F_b| over the pooled sample
  double dist = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < n && ib < n) {
    if (a[ia] <= b[ib])
      ++ia;
    else
      ++ib;
    dist = std::max(dist, std::fabs(static_cast<double>(ia) / n -
                                    static_cast<double>(ib) / n));
  }
  BermanCheckResult res;
  res.distance = dist;
  // c(0.01) = sqrt(-ln(0.005)/2) = 1.6276
  res.critical = 1.6276 * std::sqrt(2.0 / static_cast<double>(n));
  res.claim_valid = mix.spherical;
  res.pass = mix.spherical && dist < res.critical;
  return res;
}

IndepDiagnostic asymptotic_independence_diagnostic(
    const ScaleMixture& mix, double rho, const std::vector<double>& n_grid,
    std::uint64_t n_samples, std::uint64_t seed) {
  if (n_grid.empty())
    throw std::domain_error("independence_diagnostic: empty n grid");
  for (double n : n_grid)
    if (!(n >= 2.0) || !(n * 1000.0 <= static_cast<double>(n_samples)))
      throw std::domain_error(
          "independence_diagnostic: need n_samples >= 1000 * n for the "
          "quantile at 1 - 1/n");
  const auto pairs = sample_pair(mix, rho, n_samples, seed);
  std::vector<double> u1(n_samples), ur(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    u1[i] = pairs[i].u1;
    ur[i] = pairs[i].u_rho;
  }
  std::vector<double> s1 = u1, sr = ur;
  std::sort(s1.begin(), s1.end());
  std::sort(sr.begin(), sr.end());
  auto quantile = [n_samples](const std::vector<double>& sorted, double p) {
    const auto idx = static_cast<std::uint64_t>(p * (n_samples - 1));
    return sorted[std::min(idx, n_samples - 1)];
  };
  IndepDiagnostic diag;
  diag.trajectory.criterion_id = "joint-exceedance-product";
  diag.trajectory.target = 0.0;
  for (double n : n_grid) {
    const double p = 1.0 - 1.0 / n;
    const double b1 = quantile(s1, p);
    const double b2 = quantile(sr, p);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i)
      if (u1[i] > b1 && ur[i] > b2) ++hits;
    const double v =
        n * static_cast<double>(hits) / static_cast<double>(n_samples);
    diag.trajectory.u_grid.push_back(n);
    diag.trajectory.values.push_back(v);
    diag.trajectory.log_values.push_back(v > 0.0 ? std::log(v) : -kInf);
    diag.b1.push_back(b1);
    diag.b2.push_back(b2);
    diag.gap.push_back(b2 - rho * b1);
  }
  diag.trajectory.verdict =
      classify_trajectory(diag.trajectory.values, diag.trajectory.target);
  return diag;
}

}  // namespace rct
