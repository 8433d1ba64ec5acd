#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rct/dist.hpp"

namespace rct {

enum class Verdict { tends_to_zero, diverges, inconclusive };

std::string to_string(Verdict v);

// Values of a limit criterion along a u grid, with a finite-grid verdict.
// For tends-to-c variants the verdict is computed on |value - target|.
struct CriterionTrajectory {
  std::vector<double> u_grid;
  std::vector<double> values;
  std::vector<double> log_values;
  Verdict verdict = Verdict::inconclusive;
  std::string criterion_id;
  double target = 0.0;                  // limit the verdict is taken against
  std::vector<double> skipped_points;   // grid points dropped (pre-asymptotic)
};

// Finite-grid verdict rule: the last 4 deviations strictly decreasing and
// the final one < 0.05x the first -> tends_to_zero; strictly increasing and
// final > 20x the first -> diverges; otherwise inconclusive.
Verdict classify_trajectory(const std::vector<double>& values, double target);

// [Fbar(lambda/w(u))]^2 / Fbar(u) on the grid.
CriterionTrajectory mitra_resnick_trajectory(const DistributionSpec& d,
                                             double lambda,
                                             const std::vector<double>& u_grid);

// (1/Fbar(u)) int_{lambda/w}^{u-lambda/w} Fbar(u-y) dF(y).
CriterionTrajectory tony_integral_trajectory(const DistributionSpec& d,
                                             double lambda,
                                             const std::vector<double>& u_grid);

struct GoldieResnickResult {
  bool holds = false;
  CriterionTrajectory trajectory;  // values w(u)/w(tu)
};

// Whether w(u)/w(tu) stabilizes above 1 + margin on the tail of the grid.
GoldieResnickResult goldie_resnick_check(
    const std::function<double(double)>& w, double t,
    const std::vector<double>& u_grid, double margin = 0.05);

// Fbar(u+y)/Fbar(u); long-tailed iff it tends to 1.
CriterionTrajectory long_tail_trajectory(const DistributionSpec& d, double y,
                                         const std::vector<double>& u_grid);

// Convolution-square ratio Fbar2*(u)/Fbar(u); subexponential iff it tends
// to 2 (one-sided risks).
CriterionTrajectory conv_square_ratio(const DistributionSpec& d,
                                      const std::vector<double>& u_grid);

// Fbar(u/2)/Fbar(u) * Fbar(lambda/w(u)); dominated-variation route to S.
CriterionTrajectory dominated_variation_trajectory(
    const DistributionSpec& d, double lambda,
    const std::vector<double>& u_grid);

}  // namespace rct
