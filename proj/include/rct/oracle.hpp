#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rct/asymptotics.hpp"
#include "rct/mc.hpp"

namespace rct {

// Grid of thresholds with exact vs asymptotic values and their ratio.
struct ConvergenceReport {
  std::vector<double> u_grid;
  std::vector<double> exact;
  std::vector<double> asympt;
  std::vector<double> ratio;
  std::string method;  // "quadrature" | "montecarlo"
  bool trend_ok = false;
};

// P(X > u) for a single-factor product, by endpoint-aware adaptive
// quadrature of int_u^{r_F} Gbar(u/y) dF(y). Relative target 1e-8.
double exact_tail_quadrature(const ProductModel& m, double u);

enum class NfoldMethod { iterated, montecarlo };

struct NfoldOptions {
  int grid_nodes = 2048;
  double grid_check_tol = 1e-4;
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t seed = 1;
};

// P(X_n > u) for any n: either by folding one factor at a time over a
// tail-refined survival grid, or by seeded product sampling.
double exact_tail_nfold(const ProductModel& m, double u,
                        NfoldMethod method = NfoldMethod::iterated,
                        const NfoldOptions& opt = {});

// Density h(u) of the single-factor product, by the same quadrature scheme.
double exact_density_quadrature(const ProductModel& m, double u);

// Seeded Monte Carlo estimate of P(X_n > u).
MCEstimate mc_tail(const ProductModel& m, double u, std::uint64_t n_samples,
                   std::uint64_t seed);

using TailFormula = std::function<ApproxResult(const ProductModel&, double)>;

enum class OracleMethod { quadrature, montecarlo };

struct ReportOptions {
  OracleMethod method = OracleMethod::quadrature;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
};

// Exact-vs-asymptotic table over a u grid; trend_ok checks that |ratio-1|
// is non-increasing over the last up-to-4 grid points (with an allowance
// for MC noise).
ConvergenceReport convergence_report(const ProductModel& m,
                                     const TailFormula& formula,
                                     const std::vector<double>& u_grid,
                                     const ReportOptions& opt = {});

}  // namespace rct
