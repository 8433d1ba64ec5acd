#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rct/aggregation.hpp"
#include "rct/asymptotics.hpp"
#include "rct/config.hpp"
#include "rct/errors.hpp"
#include "rct/oracle.hpp"
#include "rct/report.hpp"
#include "rct/risk.hpp"
#include "rct/subexp.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// Exit codes: 0 ok, 2 config, 3 validity-window guard, 4 numerical oracle.
constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;
constexpr int kExitOracle = 4;

struct Flags {
  std::string config_path;
  std::vector<double> grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::string method;
  std::string criterion;
  std::optional<double> lambda;
  std::string out_path;
  std::string format;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON run config")->required();
  cmd->add_option("--grid", f.grid,
                  "override the threshold grid (comma separated)")
      ->delimiter(',');
  cmd->add_option("--seed", f.seed, "override mc.seed");
  cmd->add_option("--samples", f.samples, "override mc.n_samples");
  cmd->add_option("--out", f.out_path, "override output.path");
  cmd->add_option("--format", f.format, "override output.format");
}

// Flags win over the config file.
rct::RunConfig merged_config(const Flags& f, const std::string& command) {
  rct::RunConfig cfg = rct::load_run_config(f.config_path);
  if (cfg.command != command)
    throw rct::config_error("config command is \"" + cfg.command +
                            "\" but the \"" + command + "\" subcommand was run");
  if (!f.grid.empty()) {
    for (std::size_t i = 1; i < f.grid.size(); ++i)
      if (!(f.grid[i] > f.grid[i - 1]))
        throw rct::config_error("--grid must be strictly increasing");
    cfg.u_grid = f.grid;
  }
  if (f.seed) cfg.mc.seed = *f.seed;
  if (f.samples) cfg.mc.n_samples = *f.samples;
  if (!f.method.empty()) cfg.method = f.method;
  if (!f.criterion.empty()) cfg.criterion = f.criterion;
  if (f.lambda) {
    if (!(*f.lambda > 0.0))
      throw rct::config_error("--lambda must be > 0");
    cfg.lambda = *f.lambda;
  }
  if (!f.out_path.empty()) cfg.output.path = f.out_path;
  if (!f.format.empty()) {
    if (f.format != "csv" && f.format != "structured-text")
      throw rct::config_error("--format must be csv or structured-text");
    cfg.output.format = f.format;
  }
  return cfg;
}

void require_mc(const rct::RunConfig& cfg, const char* who) {
  if (!cfg.mc.seed || cfg.mc.n_samples == 0)
    throw rct::config_error(std::string(who) +
                            ": mc.seed and mc.n_samples required");
}

void emit(const rct::RunConfig& cfg, const rct::ReportMeta& meta,
          const std::string& csv) {
  const std::string text = cfg.output.format == "structured-text"
                               ? rct::structured_text(meta, csv)
                               : csv;
  if (cfg.output.path.empty())
    std::cout << text;
  else
    rct::write_text_file(cfg.output.path, text);
}

int run_tail(rct::RunConfig cfg) {
  rct::ProductModel model = rct::build_product_model(cfg);
  std::string name = cfg.formula;
  if (name.empty())
    name = model.r.is_frechet() ? "breiman"
           : model.r.is_gumbel() ? "gumbel"
                                 : "weibull";
  rct::TailFormula formula;
  if (name == "breiman")
    formula = [](const rct::ProductModel& m, double u) {
      return rct::breiman_tail(m, u);
    };
  else if (name == "gumbel")
    formula = [](const rct::ProductModel& m, double u) {
      return rct::gumbel_product_tail(m, u);
    };
  else if (name == "weibull")
    formula = [](const rct::ProductModel& m, double u) {
      return rct::weibull_product_tail(m, u);
    };
  else
    throw rct::config_error("unknown formula \"" + name + "\"");

  rct::ReportOptions opt;
  if (cfg.method == "mc") {
    require_mc(cfg, "tail mc");
    opt.method = rct::OracleMethod::montecarlo;
    opt.mc_samples = cfg.mc.n_samples;
    opt.seed = *cfg.mc.seed;
  }
  rct::ConvergenceReport rep =
      rct::convergence_report(model, formula, cfg.u_grid, opt);

  rct::ApproxResult first = formula(model, cfg.u_grid.front());
  rct::ReportMeta meta{{"tool_version", kVersion},
                       {"command", "tail"},
                       {"formula_id", first.formula_id},
                       {"regime", first.regime},
                       {"oracle", rep.method},
                       {"trend_ok", rep.trend_ok ? "true" : "false"}};
  if (cfg.method == "mc") {
    meta.emplace_back("seed", std::to_string(*cfg.mc.seed));
    meta.emplace_back("n_samples", std::to_string(cfg.mc.n_samples));
  }
  emit(cfg, meta, rct::csv_convergence(rep));
  return 0;
}

int run_ruin(rct::RunConfig cfg) {
  rct::RiskModel model = rct::build_risk_model(cfg);
  const bool do_mc = cfg.method == "all" || cfg.method == "mc";
  const bool do_ts = cfg.method == "all" || cfg.method == "term_sum";
  const bool do_as = cfg.method == "all" || cfg.method == "asymptotic";
  if (do_mc) require_mc(cfg, "ruin mc");
  std::vector<rct::RuinRow> rows;
  for (double u0 : cfg.u_grid) {
    rct::RuinRow row;
    row.u0 = u0;
    row.n = model.horizon;
    if (do_mc) {
      rct::RuinResult r =
          rct::ruin_prob_mc(model, u0, cfg.mc.n_samples, *cfg.mc.seed);
      row.has_mc = true;
      row.mc = r.estimate.value;
      row.mc_half_width = r.estimate.half_width_95;
    }
    if (do_ts) {
      row.has_term_sum = true;
      row.term_sum = rct::ruin_term_sum(model, u0).estimate.value;
    }
    if (do_as) {
      row.has_asymptotic = true;
      row.asymptotic = rct::ruin_asymptotic(model, u0).estimate.value;
    }
    rows.push_back(row);
  }
  rct::ReportMeta meta{{"tool_version", kVersion},
                       {"command", "ruin"},
                       {"formula_id", "discrete-ruin-term-sum"},
                       {"method", cfg.method},
                       {"horizon", std::to_string(model.horizon)}};
  if (do_mc) {
    meta.emplace_back("seed", std::to_string(*cfg.mc.seed));
    meta.emplace_back("n_paths", std::to_string(cfg.mc.n_samples));
  }
  emit(cfg, meta, rct::csv_ruin(rows));
  return 0;
}

std::string indep_csv(const rct::IndepDiagnostic& d) {
  std::ostringstream os;
  os << "n,value,log_value,b1,b2,gap\n";
  for (std::size_t i = 0; i < d.trajectory.u_grid.size(); ++i)
    os << rct::format_double(d.trajectory.u_grid[i]) << ','
       << rct::format_double(d.trajectory.values[i]) << ','
       << rct::format_double(d.trajectory.log_values[i]) << ','
       << rct::format_double(d.b1[i]) << ',' << rct::format_double(d.b2[i])
       << ',' << rct::format_double(d.gap[i]) << '\n';
  return os.str();
}

int run_diag(rct::RunConfig cfg) {
  static const char* kKnown[] = {"mitra_resnick", "tony",        "goldie_resnick",
                                 "long_tail",     "conv_square", "indep"};
  bool known = false;
  for (const char* k : kKnown) known = known || cfg.criterion == k;
  if (!known)
    throw rct::config_error("unknown criterion \"" + cfg.criterion + "\"");

  rct::ReportMeta meta{{"tool_version", kVersion},
                       {"command", "diag"},
                       {"criterion", cfg.criterion}};
  if (cfg.criterion == "indep") {
    require_mc(cfg, "diag indep");
    rct::ScaleMixture mix = rct::build_mixture(cfg);
    rct::IndepDiagnostic d = rct::asymptotic_independence_diagnostic(
        mix, cfg.mixture.rho, cfg.u_grid, cfg.mc.n_samples, *cfg.mc.seed);
    meta.emplace_back("verdict", rct::to_string(d.trajectory.verdict));
    meta.emplace_back("rho", rct::format_double(cfg.mixture.rho));
    meta.emplace_back("seed", std::to_string(*cfg.mc.seed));
    meta.emplace_back("n_samples", std::to_string(cfg.mc.n_samples));
    emit(cfg, meta, indep_csv(d));
    return 0;
  }
  rct::DistributionSpec d = rct::make_builtin(cfg.risk.family, cfg.risk.params);
  rct::CriterionTrajectory traj;
  if (cfg.criterion == "mitra_resnick")
    traj = rct::mitra_resnick_trajectory(d, cfg.lambda, cfg.u_grid);
  else if (cfg.criterion == "tony")
    traj = rct::tony_integral_trajectory(d, cfg.lambda, cfg.u_grid);
  else if (cfg.criterion == "long_tail")
    traj = rct::long_tail_trajectory(d, cfg.lambda, cfg.u_grid);
  else if (cfg.criterion == "conv_square")
    traj = rct::conv_square_ratio(d, cfg.u_grid);
  else {  // goldie_resnick; lambda doubles as the grid ratio t > 1
    rct::GoldieResnickResult r = rct::goldie_resnick_check(
        [&d](double u) { return d.aux_scale(u); }, cfg.lambda, cfg.u_grid);
    meta.emplace_back("holds", r.holds ? "true" : "false");
    meta.emplace_back("criterion_id", r.trajectory.criterion_id);
    emit(cfg, meta, rct::csv_trajectory(r.trajectory));
    return 0;
  }
  meta.emplace_back("criterion_id", traj.criterion_id);
  meta.emplace_back("verdict", rct::to_string(traj.verdict));
  emit(cfg, meta, rct::csv_trajectory(traj));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail asymptotics of random contractions: formulas, oracles, "
               "and diagnostics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Flags tail_f, ruin_f, diag_f;
  CLI::App* tail = app.add_subcommand(
      "tail", "exact-vs-asymptotic convergence table for a product model");
  add_common(tail, tail_f);
  tail->add_option("--method", tail_f.method, "quadrature | mc");

  CLI::App* ruin = app.add_subcommand(
      "ruin", "finite-horizon ruin probabilities (mc / term_sum / asymptotic)");
  add_common(ruin, ruin_f);
  ruin->add_option("--method", ruin_f.method,
                   "all | mc | term_sum | asymptotic");

  CLI::App* diag = app.add_subcommand(
      "diag", "tail-class diagnostics and the joint-extremes check");
  add_common(diag, diag_f);
  diag->add_option("--criterion", diag_f.criterion,
                   "mitra_resnick | tony | goldie_resnick | long_tail | "
                   "conv_square | indep");
  diag->add_option("--lambda", diag_f.lambda,
                   "criterion parameter (shift / ratio)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tail->parsed()) return run_tail(merged_config(tail_f, "tail"));
    if (ruin->parsed()) return run_ruin(merged_config(ruin_f, "ruin"));
    return run_diag(merged_config(diag_f, "diag"));
  } catch (const rct::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rct::pre_asymptotic_error& e) {
    std::cerr << "validity-window guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const rct::unreliable_region_error& e) {
    std::cerr << "validity-window guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const rct::oracle_error& e) {
    std::cerr << "oracle failure: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
