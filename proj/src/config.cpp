#include "rct/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rct/errors.hpp"

#include "json.hpp"

namespace rct {

namespace {

using nlohmann::json;

FamilyConfig parse_family(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("family"))
    throw config_error(where + ": expected an object with a \"family\" field");
  FamilyConfig f;
  f.family = j.at("family").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      throw config_error(where + ".params: expected an object of numbers");
    for (const auto& [k, v] : j.at("params").items()) {
      if (!v.is_number())
        throw config_error(where + ".params." + k + ": expected a number");
      f.params[k] = v.get<double>();
    }
  }
  return f;
}

std::vector<double> parse_grid(const json& j, const std::string& where,
                               bool require_increasing) {
  if (!j.is_array() || j.empty())
    throw config_error(where + ": expected a non-empty array of numbers");
  std::vector<double> g;
  for (const auto& v : j) {
    if (!v.is_number()) throw config_error(where + ": expected numbers");
    g.push_back(v.get<double>());
  }
  if (require_increasing)
    for (std::size_t i = 1; i < g.size(); ++i)
      if (!(g[i] > g[i - 1]))
        throw config_error(where + ": grid must be strictly increasing");
  return g;
}

// Instantiate the family now so an unknown name or bad parameter is a
// config error at parse time, not a runtime surprise.
void check_family(const FamilyConfig& f, const std::string& where) {
  try {
    (void)make_builtin(f.family, f.params);
  } catch (const std::exception& e) {
    throw config_error(where + ": " + e.what());
  }
}

void check_scaling_family(const FamilyConfig& f, const std::string& where) {
  try {
    (void)make_scaling_builtin(f.family, f.params);
  } catch (const std::exception& e) {
    throw config_error(where + ": " + e.what());
  }
}

bool wants_mc(const RunConfig& c) {
  if (c.command == "tail") return c.method == "mc";
  if (c.command == "ruin") return c.method == "all" || c.method == "mc";
  if (c.command == "diag") return c.criterion == "indep";
  return false;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be an object");

  RunConfig c;
  if (!j.contains("command"))
    throw config_error("config: \"command\" is required");
  c.command = j.at("command").get<std::string>();
  static const std::set<std::string> kCommands{"tail", "ruin", "diag"};
  if (!kCommands.count(c.command))
    throw config_error("config: unknown command \"" + c.command + "\"");

  if (j.contains("method")) c.method = j.at("method").get<std::string>();
  if (j.contains("criterion")) c.criterion = j.at("criterion").get<std::string>();
  if (j.contains("formula")) c.formula = j.at("formula").get<std::string>();
  if (j.contains("lambda")) {
    c.lambda = j.at("lambda").get<double>();
    if (!(c.lambda > 0.0)) throw config_error("config: lambda must be > 0");
  }

  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    if (m.contains("n_samples"))
      c.mc.n_samples = m.at("n_samples").get<std::uint64_t>();
    if (m.contains("seed")) c.mc.seed = m.at("seed").get<std::uint64_t>();
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
    if (o.contains("format")) c.output.format = o.at("format").get<std::string>();
    if (c.output.format != "csv" && c.output.format != "structured-text")
      throw config_error("config: output.format must be csv or structured-text");
  }

  if (c.command == "tail") {
    if (!j.contains("risk")) throw config_error("tail: \"risk\" block required");
    c.risk = parse_family(j.at("risk"), "risk");
    check_family(c.risk, "risk");
    if (!j.contains("factors"))
      throw config_error("tail: \"factors\" array required");
    if (!j.at("factors").is_array() || j.at("factors").empty())
      throw config_error("tail: factors must be a non-empty array");
    for (const auto& f : j.at("factors")) {
      c.factors.push_back(parse_family(f, "factors[]"));
      check_scaling_family(c.factors.back(), "factors[]");
    }
    if (!j.contains("u_grid")) throw config_error("tail: \"u_grid\" required");
    c.u_grid = parse_grid(j.at("u_grid"), "u_grid", true);
    if (c.method != "quadrature" && c.method != "mc")
      throw config_error("tail: method must be quadrature or mc");
  } else if (c.command == "ruin") {
    if (!j.contains("risk_model"))
      throw config_error("ruin: \"risk_model\" block required");
    const auto& rm = j.at("risk_model");
    if (!rm.contains("loss") || !rm.contains("upsilon") ||
        !rm.contains("pi") || !rm.contains("delta"))
      throw config_error("ruin: risk_model needs loss, upsilon, pi, delta");
    c.ruin.loss = parse_family(rm.at("loss"), "risk_model.loss");
    check_family(c.ruin.loss, "risk_model.loss");
    for (const auto& u : rm.at("upsilon")) {
      c.ruin.upsilon.push_back(parse_family(u, "risk_model.upsilon[]"));
      check_family(c.ruin.upsilon.back(), "risk_model.upsilon[]");
    }
    c.ruin.pi = parse_grid(rm.at("pi"), "risk_model.pi", false);
    c.ruin.delta = parse_grid(rm.at("delta"), "risk_model.delta", false);
    if (rm.contains("subexponential_asserted"))
      c.ruin.subexponential_asserted =
          rm.at("subexponential_asserted").get<bool>();
    if (c.ruin.upsilon.size() != c.ruin.pi.size() ||
        c.ruin.pi.size() != c.ruin.delta.size())
      throw config_error("ruin: upsilon, pi, delta must have equal length");
    if (!j.contains("u0_grid")) throw config_error("ruin: \"u0_grid\" required");
    c.u_grid = parse_grid(j.at("u0_grid"), "u0_grid", true);
    static const std::set<std::string> kMethods{"all", "mc", "term_sum",
                                               "asymptotic"};
    if (c.method == "quadrature") c.method = "all";  // default from ctor
    if (!kMethods.count(c.method))
      throw config_error("ruin: method must be all, mc, term_sum or asymptotic");
  } else {  // diag
    static const std::set<std::string> kCriteria{
        "mitra_resnick", "tony",        "goldie_resnick",
        "long_tail",     "conv_square", "indep"};
    if (!kCriteria.count(c.criterion))
      throw config_error("diag: unknown criterion \"" + c.criterion + "\"");
    if (c.criterion == "indep") {
      if (!j.contains("mixture"))
        throw config_error("diag indep: \"mixture\" block required");
      const auto& mx = j.at("mixture");
      if (!mx.contains("radius"))
        throw config_error("diag indep: mixture.radius required");
      c.mixture.radius = parse_family(mx.at("radius"), "mixture.radius");
      check_family(c.mixture.radius, "mixture.radius");
      if (mx.contains("factor")) {
        FamilyConfig f = parse_family(mx.at("factor"), "mixture.factor");
        c.mixture.factor_family = f.family;
        c.mixture.factor_params = f.params;
      }
      check_scaling_family(
          FamilyConfig{c.mixture.factor_family, c.mixture.factor_params},
          "mixture.factor");
      if (mx.contains("rho")) c.mixture.rho = mx.at("rho").get<double>();
      if (!(c.mixture.rho > 0.0 && c.mixture.rho < 1.0))
        throw config_error("diag indep: mixture.rho must be in (0,1)");
      if (!j.contains("n_grid"))
        throw config_error("diag indep: \"n_grid\" required");
      c.u_grid = parse_grid(j.at("n_grid"), "n_grid", true);
    } else {
      if (!j.contains("risk"))
        throw config_error("diag: \"risk\" block required");
      c.risk = parse_family(j.at("risk"), "risk");
      check_family(c.risk, "risk");
      if (!j.contains("u_grid")) throw config_error("diag: \"u_grid\" required");
      c.u_grid = parse_grid(j.at("u_grid"), "u_grid", true);
    }
  }

  if (wants_mc(c)) {
    if (!c.mc.seed)
      throw config_error("config: mc.seed required when Monte Carlo is used");
    if (c.mc.n_samples == 0)
      throw config_error("config: mc.n_samples required when Monte Carlo is used");
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_run_config(ss.str());
}

ProductModel build_product_model(const RunConfig& cfg) {
  std::vector<ScalingSpec> factors;
  for (const auto& f : cfg.factors)
    factors.push_back(make_scaling_builtin(f.family, f.params));
  return ProductModel(make_builtin(cfg.risk.family, cfg.risk.params),
                      std::move(factors));
}

RiskModel build_risk_model(const RunConfig& cfg) {
  std::vector<DistributionSpec> ups;
  for (const auto& u : cfg.ruin.upsilon)
    ups.push_back(make_builtin(u.family, u.params));
  return RiskModel(make_builtin(cfg.ruin.loss.family, cfg.ruin.loss.params),
                   std::move(ups), cfg.ruin.pi, cfg.ruin.delta,
                   cfg.ruin.subexponential_asserted);
}

ScaleMixture build_mixture(const RunConfig& cfg) {
  DistributionSpec radius =
      make_builtin(cfg.mixture.radius.family, cfg.mixture.radius.params);
  if (cfg.mixture.factor_family == "spherical")
    return make_spherical_mixture(std::move(radius));
  return ScaleMixture(
      std::move(radius),
      make_scaling_builtin(cfg.mixture.factor_family, cfg.mixture.factor_params),
      SignLaw{});
}

}  // namespace rct
