#pragma once

namespace rct {

// Euler gamma function; uses exp(lgamma) beyond 30 where direct
// evaluation would overflow or lose digits.
double gamma_fn(double x);
double log_gamma(double x);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt, x > 0.
double expint_e1(double x);

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);

// Standard normal survival function and its inverse.
double norm_sf(double x);
double norm_sf_inv(double p);

}  // namespace rct
