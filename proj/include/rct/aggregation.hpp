#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rct/asymptotics.hpp"
#include "rct/dist.hpp"
#include "rct/scaling.hpp"
#include "rct/subexp.hpp"

namespace rct {

// Joint law of the signs (I1, I2) on {-1,+1}^2.
struct SignLaw {
  double p_pp = 0.25;  // P(I1=+1, I2=+1)
  double p_pm = 0.25;
  double p_mp = 0.25;
  double p_mm = 0.25;
};

// Bivariate scale mixture (U1, U2) = R (I1 S, I2 sqrt(1-S^2)) with
// R, S, (I1,I2) independent.
struct ScaleMixture {
  DistributionSpec r;
  ScalingSpec s;
  SignLaw signs;
  bool spherical = false;  // S^2 ~ beta(1/2,1/2) with fair independent signs

  ScaleMixture(DistributionSpec radius, ScalingSpec factor, SignLaw sign_law);

  double q11() const { return signs.p_pp; }
};

ScaleMixture make_spherical_mixture(DistributionSpec radius);

// Local behaviour of P(S(rho) > 1-u) ~ q L_rho(sqrt(u)) (2u(1-rho^2))^(a/2):
// the regular-variation data of the combined factor at its upper endpoint.
struct LocalGSpec {
  double alpha_rho = 1.0;
  std::function<double(double)> L_rho;  // slowly varying at 0
  double rho = 0.5;
};

// For S with a density g continuous at rho: alpha_rho = 1, L_rho = 2 g(rho).
LocalGSpec make_local_spec_from_density(const ScalingSpec& s, double rho);
LocalGSpec make_local_spec_spherical(double rho);

struct PairSample {
  double u1;     // U1
  double u_rho;  // U(rho) = rho U1 + sqrt(1-rho^2) U2
};

// n seeded samples of (U1, U(rho)); chunk-deterministic like the MC module.
std::vector<PairSample> sample_pair(const ScaleMixture& mix, double rho,
                                    std::uint64_t n, std::uint64_t seed);

// Samples of the combined factor S(rho) = rho I1 S + sqrt(1-rho^2) I2 sqrt(1-S^2).
std::vector<double> sample_s_rho(const ScaleMixture& mix, double rho,
                                 std::uint64_t n, std::uint64_t seed);

// P(S(rho) > 1-u) for small u: q L_rho(sqrt(u)) (2u(1-rho^2))^(alpha_rho/2).
double s_rho_tail(const LocalGSpec& spec, double q11, double u,
                  double window = 0.05);

// Gumbel radius: q Gamma(a/2+1) L_rho(eta^-1/2) (2(1-rho^2)/eta)^(a/2) Fbar(u),
// eta = u w(u). Requires eta^-1/2 <= window.
ApproxResult u_rho_tail_gumbel(const ScaleMixture& mix, const LocalGSpec& spec,
                               double u, double window = 0.25);

// Weibull radius with endpoint 1, evaluated at threshold u = 1 - v:
// q [Gamma(a/2+1) Gamma(g+1) / Gamma(a/2+g+1)] L_rho(sqrt(v))
//   (2v(1-rho^2))^(a/2) Fbar(1-v).
ApproxResult u_rho_tail_weibull(const ScaleMixture& mix, const LocalGSpec& spec,
                                double u, double window = 0.05);

struct BermanCheckResult {
  double distance = 0.0;   // two-sample KS sup distance
  double critical = 0.0;   // level-0.01 critical value
  bool pass = false;       // distance < critical; only claimed when spherical
  bool claim_valid = false;  // false for non-spherical mixtures (diagnostic only)
};

// Compares the samples of c1 U1 + c2 U2 against sqrt(c1^2+c2^2) U1 drawn
// from an independent stream.
BermanCheckResult berman_identity_check(const ScaleMixture& mix, double c1,
                                        double c2, std::uint64_t n,
                                        std::uint64_t seed);

struct IndepDiagnostic {
  CriterionTrajectory trajectory;  // n * Phat(U1 > b1(n), U(rho) > b2(n))
  std::vector<double> gap;         // b2(n) - rho b1(n), per grid point
  std::vector<double> b1;
  std::vector<double> b2;
};

// One shared sampling pass of n_samples pairs; b_i(n) are empirical
// 1 - 1/n marginal quantiles.
IndepDiagnostic asymptotic_independence_diagnostic(
    const ScaleMixture& mix, double rho, const std::vector<double>& n_grid,
    std::uint64_t n_samples, std::uint64_t seed);

}  // namespace rct
