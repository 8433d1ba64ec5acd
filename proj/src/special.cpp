#include "rct/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rct {

double log_gamma(double x) { return std::lgamma(x); }

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: nonpositive integer argument");
  if (x > 30.0) return std::exp(std::lgamma(x));
  return std::tgamma(x);
}

double expint_e1(double x) {
  if (x <= 0.0) throw std::domain_error("expint_e1: requires x > 0");
  return -std::expint(-x);
}

namespace {

// Continued fraction for the incomplete beta, Lentz's method.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("inc_beta: continued fraction did not converge");
}

}  // namespace

double inc_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("inc_beta: a, b > 0 required");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbeta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const double front = std::exp(lbeta + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * betacf(a, b, x) / a;
  return 1.0 - std::exp(lbeta + a * std::log(x) + b * std::log1p(-x)) *
                   betacf(b, a, 1.0 - x) / b;
}

double norm_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double norm_sf_inv(double p) {
  if (p <= 0.0 || p >= 1.0)
    throw std::domain_error("norm_sf_inv: p in (0,1) required");
  // Acklam-style rational initial guess, then one Halley step.
  const double q = 1.0 - p;  // cdf value
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (q < plow) {
    const double r = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (q <= phigh) {
    const double r = q - 0.5, s = r * r;
    x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
        (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
  } else {
    const double r = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  }
  // Halley refinement against the survival function.
  for (int it = 0; it < 2; ++it) {
    const double e = norm_sf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double u = e / pdf;  // sf' = -pdf
    x += u / (1.0 - 0.5 * x * u);
  }
  return x;
}

}  // namespace rct
