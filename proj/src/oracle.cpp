#include "rct/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rct/errors.hpp"
#include "rct/quadrature.hpp"

namespace rct {

namespace {

bool is_degenerate(const DistributionSpec& d) {
  return d.atom_at_lo == 1.0 && d.support_lo == d.support_hi;
}

// log-survival table over a log-spaced y grid; linear interpolation in
// (log y, log S), linear extrapolation beyond the last node.
struct TabulatedSurvival {
  std::vector<double> logy;
  std::vector<double> logs;

  double operator()(double y) const {
    const double ly = std::log(y);
    if (ly <= logy.front()) return logs.front();
    const auto it = std::upper_bound(logy.begin(), logy.end(), ly);
    std::size_t j = static_cast<std::size_t>(it - logy.begin());
    if (j >= logy.size()) j = logy.size() - 1;
    const double t = (ly - logy[j - 1]) / (logy[j] - logy[j - 1]);
    return logs[j - 1] + t * (logs[j] - logs[j - 1]);
  }
};

using LogSurvFn = std::function<double(double)>;

// I(y) = int exp(SF(y/s) - SF(y)) dG(s), the one-factor fold at a point.
double fold_point(const LogSurvFn& sf, const ScalingSpec& factor, double y) {
  if (is_degenerate(factor.dist))
    return std::exp(sf(y / factor.dist.support_lo) - sf(y));
  if (!factor.dist.has_density())
    throw oracle_error("exact_tail_nfold: factor density required");
  const double base = sf(y);
  if (!std::isfinite(base))
    throw oracle_error("exact_tail_nfold: survival underflowed at grid point");
  auto integrand = [&](double s) {
    const double g = factor.dist.density(s);
    if (g == 0.0) return 0.0;
    const double ls = sf(y / s);
    return std::isfinite(ls) ? std::exp(ls - base) * g : 0.0;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-8;
  double v = integrate_or_throw(integrand, factor.dist.support_lo,
                                std::min(1.0, factor.dist.support_hi), opt);
  // an atom of the factor at its lower endpoint contributes a step
  if (factor.dist.atom_at_lo > 0.0 && factor.dist.support_lo > 0.0)
    v += factor.dist.atom_at_lo *
         std::exp(sf(y / factor.dist.support_lo) - base);
  return v;
}

TabulatedSurvival tabulate_fold(const LogSurvFn& sf, const ScalingSpec& factor,
                                double ylo, double yhi, int nodes) {
  TabulatedSurvival tab;
  tab.logy.resize(nodes);
  tab.logs.resize(nodes);
  const double l0 = std::log(ylo), l1 = std::log(yhi);
  double prev = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double ly = l0 + (l1 - l0) * j / (nodes - 1);
    const double y = std::exp(ly);
    double ls = sf(y) + std::log(fold_point(sf, factor, y));
    if (j > 0 && ls > prev) ls = prev;  // keep monotone under roundoff
    tab.logy[j] = ly;
    tab.logs[j] = ls;
    prev = ls;
  }
  return tab;
}

double nfold_iterated(const ProductModel& m, double u, int nodes) {
  // only queried at arguments >= u; cut the grid where the risk tail has
  // dropped by e^-60 relative to its value at u
  const double ls_u = m.r.log_survival(u);
  if (!std::isfinite(ls_u))
    throw oracle_error("exact_tail_nfold: risk survival underflowed at u");
  if (!std::isinf(m.r.support_hi) && m.factors.size() > 1)
    throw oracle_error(
        "exact_tail_nfold: iterated folds require an infinite upper endpoint");
  double yhi = std::max(2.0 * u, u + 1.0);
  while (m.r.log_survival(yhi) > ls_u - 60.0) yhi *= 1.5;

  LogSurvFn sf = m.r.log_survival;
  std::vector<TabulatedSurvival> tabs;
  tabs.reserve(m.factors.size());
  for (std::size_t k = 0; k + 1 < m.factors.size(); ++k) {
    if (is_degenerate(m.factors[k].dist)) {
      const double s0 = m.factors[k].dist.support_lo;
      sf = [prev = sf, s0](double y) { return prev(y / s0); };
      continue;
    }
    tabs.push_back(tabulate_fold(sf, m.factors[k], u * 0.999, yhi, nodes));
    const TabulatedSurvival* t = &tabs.back();
    sf = [t](double y) { return (*t)(y); };
  }
  const double lsu = sf(u);
  return std::exp(lsu) * fold_point(sf, m.factors.back(), u);
}

}  // namespace

double exact_tail_quadrature(const ProductModel& m, double u) {
  if (m.factors.size() != 1)
    throw oracle_error("exact_tail_quadrature: single-factor products only");
  const ScalingSpec& factor = m.factors.front();
  const DistributionSpec& r = m.r;
  const double rF = std::min(r.support_hi, r.tail_endpoint());
  if (!(u < rF)) return 0.0;
  if (u <= r.support_lo * factor.dist.support_lo) return 1.0;
  const double ls0 = r.log_survival(u);
  if (!std::isfinite(ls0))
    throw unreliable_region_error("exact_tail_quadrature: survival underflow at u");

  if (is_degenerate(factor.dist)) return r.survival(u / factor.dist.support_lo);

  QuadOptions opt;
  opt.rel_tol = 1e-9;

  if (r.has_density()) {
    auto gbar = [&factor](double s) { return factor.dist.survival(s); };
    // scaled kernel: Gbar(u/y) f(y) / Fbar(u), y in (u, rF)
    auto kern = [&](double y) {
      const double lf = r.log_density(y);
      if (!std::isfinite(lf)) return 0.0;
      const double gb = gbar(u / y);
      return gb == 0.0 ? 0.0 : gb * std::exp(lf - ls0);
    };
    if (r.is_gumbel()) {
      const double w = r.aux_scale(u);
      auto integ = [&](double z) { return kern(u + z / w) / w; };
      QuadResult qr;
      if (std::isinf(rF))
        qr = integrate_to_inf(integ, 0.0, opt);
      else
        qr = integrate(integ, 0.0, (rF - u) * w, opt);
      if (!qr.converged)
        throw oracle_error("exact_tail_quadrature: refinement failed");
      return std::exp(ls0) * qr.value;
    }
    if (r.is_weibull() || !std::isinf(rF)) {
      // nodes concentrated toward y = u via y = rF - (rF-u) t, t in (0,1)
      auto integ = [&](double t) {
        return kern(rF - (rF - u) * t) * (rF - u);
      };
      return std::exp(ls0) * integrate_or_throw(integ, 0.0, 1.0, opt);
    }
    // Frechet / generic infinite endpoint
    return std::exp(ls0) * integrate_to_inf_or_throw(kern, u, opt);
  }

  if (factor.dist.has_density()) {
    // P(X>u)/Fbar(u) = int exp(ls(u/s) - ls0) g(s) ds
    auto integ = [&](double s) {
      const double g = factor.dist.density(s);
      if (g == 0.0) return 0.0;
      const double ls = r.log_survival(u / s);
      return std::isfinite(ls) ? std::exp(ls - ls0) * g : 0.0;
    };
    return std::exp(ls0) * integrate_or_throw(integ, factor.dist.support_lo,
                                              1.0, opt);
  }
  throw oracle_error("exact_tail_quadrature: no density available");
}

double exact_density_quadrature(const ProductModel& m, double u) {
  if (m.factors.size() != 1)
    throw oracle_error("exact_density_quadrature: single-factor products only");
  const ScalingSpec& factor = m.factors.front();
  const DistributionSpec& r = m.r;
  const double rF = std::min(r.support_hi, r.tail_endpoint());
  if (!(u < rF) || !(u > 0.0)) return 0.0;
  if (!r.has_density())
    throw oracle_error("exact_density_quadrature: risk density required");
  if (is_degenerate(factor.dist)) {
    const double s0 = factor.dist.support_lo;
    return r.density(u / s0) / s0;
  }
  if (!factor.dist.has_density())
    throw oracle_error("exact_density_quadrature: neither density available");
  const double ls0 = r.log_survival(u);
  if (!std::isfinite(ls0))
    throw unreliable_region_error("exact_density_quadrature: survival underflow");

  QuadOptions opt;
  opt.rel_tol = 1e-9;
  // scaled kernel: g(u/y) f(y) / (y Fbar(u))
  auto kern = [&](double y) {
    const double lf = r.log_density(y);
    if (!std::isfinite(lf)) return 0.0;
    const double g = factor.dist.density(u / y);
    return g == 0.0 ? 0.0 : g / y * std::exp(lf - ls0);
  };
  double scaled;
  if (r.is_gumbel() && std::isinf(rF)) {
    const double w = r.aux_scale(u);
    scaled = integrate_to_inf_or_throw(
        [&](double z) { return kern(u + z / w) / w; }, 0.0, opt);
  } else if (!std::isinf(rF)) {
    scaled = integrate_or_throw(
        [&](double t) { return kern(rF - (rF - u) * t) * (rF - u); }, 0.0, 1.0,
        opt);
  } else {
    scaled = integrate_to_inf_or_throw(kern, u, opt);
  }
  return std::exp(ls0) * scaled;
}

double exact_tail_nfold(const ProductModel& m, double u, NfoldMethod method,
                        const NfoldOptions& opt) {
  if (method == NfoldMethod::montecarlo)
    return mc_tail(m, u, opt.mc_samples, opt.seed).value;
  if (m.factors.size() == 1) return exact_tail_quadrature(m, u);
  const double v = nfold_iterated(m, u, opt.grid_nodes);
  const double v2 = nfold_iterated(m, u, opt.grid_nodes * 2);
  if (std::fabs(v2 - v) > opt.grid_check_tol * std::max(v2, 1e-300))
    throw oracle_error("exact_tail_nfold: grid-doubling check failed");
  return v2;
}

MCEstimate mc_tail(const ProductModel& m, double u, std::uint64_t n_samples,
                   std::uint64_t seed) {
  double prod_lo = m.r.support_lo;
  for (const auto& f : m.factors) prod_lo *= f.dist.support_lo;
  if (u < prod_lo) return MCEstimate{1.0, 0.0, n_samples, seed};
  auto event = [&m, u](std::mt19937_64& rng) {
    double x = m.r.sampler(rng);
    for (const auto& f : m.factors) x *= f.dist.sampler(rng);
    return x > u;
  };
  return mc_probability(n_samples, seed, event);
}

ConvergenceReport convergence_report(const ProductModel& m,
                                     const TailFormula& formula,
                                     const std::vector<double>& u_grid,
                                     const ReportOptions& opt) {
  ConvergenceReport rep;
  rep.u_grid = u_grid;
  rep.method =
      opt.method == OracleMethod::quadrature ? "quadrature" : "montecarlo";
  std::vector<double> noise(u_grid.size(), 0.0);
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    double exact;
    if (opt.method == OracleMethod::quadrature) {
      exact = m.factors.size() == 1 ? exact_tail_quadrature(m, u)
                                    : exact_tail_nfold(m, u);
    } else {
      MCEstimate est = mc_tail(m, u, opt.mc_samples, opt.seed);
      exact = est.value;
      noise[i] = est.value > 0.0 ? est.half_width_95 / est.value : kInf;
    }
    const ApproxResult ar = formula(m, u);
    rep.exact.push_back(exact);
    rep.asympt.push_back(ar.value);
    rep.ratio.push_back(exact / ar.value);
  }
  // |ratio - 1| non-increasing over the last up-to-4 points, within MC noise
  rep.trend_ok = true;
  const std::size_t n = rep.ratio.size();
  const std::size_t start = n > 4 ? n - 4 : 0;
  for (std::size_t i = start; i + 1 < n; ++i) {
    const double a = std::fabs(rep.ratio[i] - 1.0);
    const double b = std::fabs(rep.ratio[i + 1] - 1.0);
    if (b > a + noise[i] + noise[i + 1] + 1e-12) rep.trend_ok = false;
  }
  return rep;
}

}  // namespace rct
