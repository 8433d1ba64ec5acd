#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rct/oracle.hpp"
#include "rct/risk.hpp"
#include "rct/subexp.hpp"

namespace rct {

// Key/value header lines for the structured-text format; CSV bodies are
// identical between the two formats so rows stay byte-comparable.
using ReportMeta = std::vector<std::pair<std::string, std::string>>;

// Full-precision (round-trip) decimal rendering; keeps reruns byte-identical.
std::string format_double(double v);

std::string csv_convergence(const ConvergenceReport& rep);
std::string csv_trajectory(const CriterionTrajectory& traj);

struct RuinRow {
  double u0 = 0.0;
  int n = 0;
  // columns below render as empty when the method was not run
  bool has_mc = false, has_term_sum = false, has_asymptotic = false;
  double mc = 0.0, mc_half_width = 0.0;
  double term_sum = 0.0;
  double asymptotic = 0.0;
};

std::string csv_ruin(const std::vector<RuinRow>& rows);

// "# key: value" header lines followed by the CSV body.
std::string structured_text(const ReportMeta& meta, const std::string& csv);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace rct
