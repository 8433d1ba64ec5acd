#pragma once

#include <functional>

namespace rct {

struct QuadResult {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = false;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_depth = 60;
  int max_intervals = 20000;
};

// Globally adaptive Gauss-Kronrod (G7,K15) on a finite interval.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Semi-infinite [a, inf): mapped onto (0,1] via t -> a + t/(1-t).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt = {});

// Throwing wrappers; raise oracle_error if refinement fails.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const QuadOptions& opt = {});
double integrate_to_inf_or_throw(const std::function<double(double)>& f,
                                 double a, const QuadOptions& opt = {});

}  // namespace rct
