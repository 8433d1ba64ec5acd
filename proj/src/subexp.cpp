#include "rct/subexp.hpp"

#include <cmath>
#include <stdexcept>

#include "rct/errors.hpp"
#include "rct/quadrature.hpp"

namespace rct {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::tends_to_zero: return "tends_to_zero";
    case Verdict::diverges: return "diverges";
    default: return "inconclusive";
  }
}

Verdict classify_trajectory(const std::vector<double>& values, double target) {
  if (values.size() < 4) return Verdict::inconclusive;
  std::vector<double> dev;
  dev.reserve(values.size());
  for (double v : values) dev.push_back(std::fabs(v - target));
  const std::size_t n = dev.size();
  bool dec = true, inc = true;
  for (std::size_t i = n - 4; i + 1 < n; ++i) {
    if (!(dev[i + 1] < dev[i])) dec = false;
    if (!(dev[i + 1] > dev[i])) inc = false;
  }
  if (dec && dev.back() < 0.05 * dev.front()) return Verdict::tends_to_zero;
  if (inc && dev.back() > 20.0 * dev.front()) return Verdict::diverges;
  return Verdict::inconclusive;
}

namespace {

void check_gumbel_decaying_w(const DistributionSpec& d,
                             const std::vector<double>& u_grid,
                             const char* who) {
  const auto* gu = std::get_if<GumbelTail>(&d.tail);
  if (!gu) throw std::domain_error(std::string(who) + ": Gumbel class required");
  if (!std::isinf(gu->endpoint))
    throw std::domain_error(std::string(who) + ": infinite endpoint required");
  if (u_grid.size() < 2)
    throw std::domain_error(std::string(who) + ": grid too short");
  const double w0 = gu->aux_scale(u_grid.front());
  const double w1 = gu->aux_scale(u_grid.back());
  if (!(w1 < 0.9 * w0))
    throw std::domain_error(std::string(who) +
                            ": scaling function w does not tend to 0 on the grid");
}

void finalize(CriterionTrajectory& t) {
  t.verdict = classify_trajectory(t.values, t.target);
}

}  // namespace

CriterionTrajectory mitra_resnick_trajectory(const DistributionSpec& d,
                                             double lambda,
                                             const std::vector<double>& u_grid) {
  if (!(lambda > 0.0)) throw std::domain_error("mitra_resnick: lambda > 0 required");
  check_gumbel_decaying_w(d, u_grid, "mitra_resnick");
  CriterionTrajectory t;
  t.criterion_id = "mitra-resnick-square-ratio";
  for (double u : u_grid) {
    const double w = d.aux_scale(u);
    const double lv = 2.0 * d.log_survival(lambda / w) - d.log_survival(u);
    t.u_grid.push_back(u);
    t.log_values.push_back(lv);
    t.values.push_back(std::exp(lv));
  }
  finalize(t);
  return t;
}

CriterionTrajectory tony_integral_trajectory(const DistributionSpec& d,
                                             double lambda,
                                             const std::vector<double>& u_grid) {
  if (!(lambda > 0.0)) throw std::domain_error("tony_integral: lambda > 0 required");
  check_gumbel_decaying_w(d, u_grid, "tony_integral");
  if (!d.has_density())
    throw std::domain_error("tony_integral: density required for the integrator");
  CriterionTrajectory t;
  t.criterion_id = "central-convolution-integral";
  QuadOptions opt;
  opt.rel_tol = 1e-7;
  opt.abs_tol = 1e-14;
  for (double u : u_grid) {
    const double w = d.aux_scale(u);
    const double a = lambda / w, b = u - lambda / w;
    if (!(b > a)) {
      t.skipped_points.push_back(u);
      continue;
    }
    const double ls0 = d.log_survival(u);
    auto integrand = [&](double y) {
      const double lf = d.log_density(y);
      if (!std::isfinite(lf)) return 0.0;
      const double ls = d.log_survival(u - y);
      return std::exp(ls + lf - ls0);
    };
    // both endpoints carry mass; split at the midpoint
    const double mid = 0.5 * (a + b);
    const double v = integrate_or_throw(integrand, a, mid, opt) +
                     integrate_or_throw(integrand, mid, b, opt);
    t.u_grid.push_back(u);
    t.values.push_back(v);
    t.log_values.push_back(v > 0.0 ? std::log(v) : -kInf);
  }
  finalize(t);
  return t;
}

GoldieResnickResult goldie_resnick_check(
    const std::function<double(double)>& w, double t,
    const std::vector<double>& u_grid, double margin) {
  if (!(t > 1.0)) throw std::domain_error("goldie_resnick: t > 1 required");
  GoldieResnickResult res;
  res.trajectory.criterion_id = "scaling-function-ratio";
  res.trajectory.target = 1.0;
  double prev = kInf;
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    const double wu = w(u);
    // w must be eventually non-increasing for the criterion to apply
    if (i + 1 >= u_grid.size() / 2 && wu > prev * (1.0 + 1e-9))
      throw std::domain_error("goldie_resnick: w increasing on tail of grid");
    prev = wu;
    const double ratio = wu / w(t * u);
    res.trajectory.u_grid.push_back(u);
    res.trajectory.values.push_back(ratio);
    res.trajectory.log_values.push_back(std::log(ratio));
  }
  const std::size_t n = res.trajectory.values.size();
  const std::size_t tail = n > 4 ? n - 4 : 0;
  res.holds = true;
  for (std::size_t i = tail; i < n; ++i)
    if (!(res.trajectory.values[i] > 1.0 + margin)) res.holds = false;
  res.trajectory.verdict = Verdict::inconclusive;
  return res;
}

CriterionTrajectory long_tail_trajectory(const DistributionSpec& d, double y,
                                         const std::vector<double>& u_grid) {
  if (!std::isinf(d.support_hi))
    throw std::domain_error("long_tail: infinite endpoint required");
  CriterionTrajectory t;
  t.criterion_id = "long-tail-shift-ratio";
  t.target = 1.0;
  for (double u : u_grid) {
    const double lv = d.log_survival(u + y) - d.log_survival(u);
    t.u_grid.push_back(u);
    t.log_values.push_back(lv);
    t.values.push_back(std::exp(lv));
  }
  finalize(t);
  return t;
}

CriterionTrajectory conv_square_ratio(const DistributionSpec& d,
                                      const std::vector<double>& u_grid) {
  if (!std::isinf(d.support_hi))
    throw std::domain_error("conv_square: infinite endpoint required");
  if (d.support_lo < 0.0)
    throw std::domain_error("conv_square: two-sided input; evaluate on F+ only");
  if (!d.has_density())
    throw std::domain_error("conv_square: density required for the integrator");
  CriterionTrajectory t;
  t.criterion_id = "convolution-square-ratio";
  t.target = 2.0;
  QuadOptions opt;
  opt.rel_tol = 1e-7;
  opt.abs_tol = 1e-14;
  for (double u : u_grid) {
    const double ls0 = d.log_survival(u);
    if (!std::isfinite(ls0))
      throw unreliable_region_error("conv_square: survival underflow at u");
    auto integrand = [&](double y) {
      const double lf = d.log_density(y);
      if (!std::isfinite(lf)) return 0.0;
      return std::exp(d.log_survival(u - y) + lf - ls0);
    };
    const double lo = d.support_lo, mid = 0.5 * (lo + u);
    double v = integrate_or_throw(integrand, lo, mid, opt) +
               integrate_or_throw(integrand, mid, u, opt);
    // point mass at the lower endpoint enters the Stieltjes integral directly
    if (d.atom_at_lo > 0.0)
      v += d.atom_at_lo * std::exp(d.log_survival(u - lo) - ls0);
    const double ratio = 1.0 + v;
    t.u_grid.push_back(u);
    t.values.push_back(ratio);
    t.log_values.push_back(std::log(ratio));
  }
  finalize(t);
  return t;
}

CriterionTrajectory dominated_variation_trajectory(
    const DistributionSpec& d, double lambda,
    const std::vector<double>& u_grid) {
  if (!(lambda > 0.0))
    throw std::domain_error("dominated_variation: lambda > 0 required");
  check_gumbel_decaying_w(d, u_grid, "dominated_variation");
  CriterionTrajectory t;
  t.criterion_id = "dominated-variation-product";
  for (double u : u_grid) {
    const double w = d.aux_scale(u);
    const double lv = d.log_survival(0.5 * u) - d.log_survival(u) +
                      d.log_survival(lambda / w);
    t.u_grid.push_back(u);
    t.log_values.push_back(lv);
    t.values.push_back(std::exp(lv));
  }
  finalize(t);
  return t;
}

}  // namespace rct
