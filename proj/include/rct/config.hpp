#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rct/aggregation.hpp"
#include "rct/asymptotics.hpp"
#include "rct/risk.hpp"

namespace rct {

struct FamilyConfig {
  std::string family;
  std::map<std::string, double> params;
};

struct McConfig {
  std::uint64_t n_samples = 0;
  std::optional<std::uint64_t> seed;
};

struct OutputConfig {
  std::string path;             // empty -> stdout
  std::string format = "csv";   // csv | structured-text
};

struct RuinConfig {
  FamilyConfig loss;
  std::vector<FamilyConfig> upsilon;
  std::vector<double> pi;
  std::vector<double> delta;
  bool subexponential_asserted = false;
};

struct MixtureConfig {
  FamilyConfig radius;
  std::string factor_family = "spherical";
  std::map<std::string, double> factor_params;
  double rho = 0.5;
};

struct RunConfig {
  std::string command;            // tail | ruin | diag
  std::string method = "quadrature";  // tail: quadrature|mc; ruin: all|mc|term_sum|asymptotic
  std::string criterion;          // diag: mitra_resnick|tony|goldie_resnick|long_tail|conv_square|indep
  std::string formula;            // tail: breiman|gumbel|weibull (default by tail class)
  FamilyConfig risk;
  std::vector<FamilyConfig> factors;
  RuinConfig ruin;
  MixtureConfig mixture;
  std::vector<double> u_grid;     // u0 grid for ruin, n grid for indep
  double lambda = 1.0;            // diag criteria parameter
  McConfig mc;
  OutputConfig output;
};

// Parses the JSON text of a run config; throws config_error with a
// human-readable message on any violation.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Model builders shared by the CLI; throw config_error on unknown families.
ProductModel build_product_model(const RunConfig& cfg);
RiskModel build_risk_model(const RunConfig& cfg);
ScaleMixture build_mixture(const RunConfig& cfg);

}  // namespace rct
