#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rct/config.hpp"
#include "rct/errors.hpp"
#include "rct/report.hpp"

using namespace rct;

TEST_CASE("format_double round-trips and is stable") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e17}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(format_double(v) == s);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv bodies") {
  SUBCASE("convergence table") {
    ConvergenceReport r;
    r.u_grid = {5.0, 10.0};
    r.exact = {0.5, 0.25};
    r.asympt = {1.0, 0.25};
    r.ratio = {0.5, 1.0};
    CHECK(csv_convergence(r) ==
          "u,exact,asymptotic,ratio\n5,0.5,1,0.5\n10,0.25,0.25,1\n");
  }
  SUBCASE("trajectory table") {
    CriterionTrajectory t;
    t.u_grid = {100.0};
    t.values = {2.0};
    t.log_values = {std::log(2.0)};
    CHECK(csv_trajectory(t) ==
          "u,value,log_value\n100,2," + format_double(std::log(2.0)) + "\n");
  }
  SUBCASE("ruin table leaves skipped methods empty") {
    RuinRow a;
    a.u0 = 25.0;
    a.n = 1;
    a.has_term_sum = true;
    a.term_sum = 0.125;
    RuinRow b;
    b.u0 = 50.0;
    b.n = 1;
    b.has_mc = true;
    b.mc = 0.01;
    b.mc_half_width = 0.001;
    b.has_asymptotic = true;
    b.asymptotic = 0.011;
    CHECK(csv_ruin({a, b}) ==
          "u0,n,mc,mc_half_width,term_sum,asymptotic\n"
          "25,1,,,0.125,\n"
          "50,1,0.01,0.001,,0.011\n");
  }
  SUBCASE("structured text prefixes comment headers") {
    CHECK(structured_text({{"command", "tail"}, {"formula", "x"}}, "a,b\n1,2\n") ==
          "# command: tail\n# formula: x\na,b\n1,2\n");
  }
}

TEST_CASE("write_text_file") {
  const std::string path = "report_config_test_tmp.txt";
  write_text_file(path, "hello\n");
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "hello\n");
  std::remove(path.c_str());
  CHECK_THROWS(write_text_file("no_such_dir_xyz/out.txt", "x"));
}

TEST_CASE("config parsing, tail command") {
  const std::string ok = R"({
    "command": "tail",
    "risk": {"family": "exponential", "params": {"rate": 1.0}},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5, 10, 20]
  })";
  RunConfig c = parse_run_config(ok);
  CHECK(c.command == "tail");
  CHECK(c.method == "quadrature");
  CHECK(c.u_grid.size() == 3);
  const ProductModel m = build_product_model(c);
  CHECK(m.r.name == "exponential");
  CHECK(m.factors.size() == 1);

  CHECK_THROWS_AS(parse_run_config("not json"), config_error);
  CHECK_THROWS_AS(parse_run_config(R"({"command": "frobnicate"})"),
                  config_error);
  CHECK_THROWS_AS(parse_run_config(R"({"u_grid": [1]})"), config_error);
  // unknown family caught at parse time
  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "tail",
    "risk": {"family": "zeta"},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5]
  })"),
                  config_error);
  // missing required parameter of a known family
  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "tail",
    "risk": {"family": "pareto"},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5]
  })"),
                  config_error);
  // grid must increase strictly
  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "tail",
    "risk": {"family": "exponential", "params": {"rate": 1.0}},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5, 5]
  })"),
                  config_error);
  // mc method needs an explicit seed and sample count
  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "tail",
    "method": "mc",
    "risk": {"family": "exponential", "params": {"rate": 1.0}},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5]
  })"),
                  config_error);
  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "tail",
    "risk": {"family": "exponential", "params": {"rate": 1.0}},
    "factors": [{"family": "uniform01"}],
    "u_grid": [5],
    "output": {"format": "xml"}
  })"),
                  config_error);
}

TEST_CASE("config parsing, ruin command") {
  const std::string ok = R"({
    "command": "ruin",
    "method": "term_sum",
    "risk_model": {
      "loss": {"family": "kotz", "params": {"r": 1.0, "gamma": 0.5}},
      "upsilon": [{"family": "pareto", "params": {"gamma": 1.0}}],
      "pi": [0.5],
      "delta": [0.05],
      "subexponential_asserted": true
    },
    "u0_grid": [25, 50]
  })";
  RunConfig c = parse_run_config(ok);
  CHECK(c.method == "term_sum");
  const RiskModel m = build_risk_model(c);
  CHECK(m.horizon == 1);
  CHECK(m.subexponential_asserted);

  // default method resolves to all (and therefore requires mc settings)
  std::string no_method = ok;
  no_method.replace(no_method.find("\"term_sum\""), 10, "\"all\"");
  CHECK_THROWS_AS(parse_run_config(no_method), config_error);

  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "ruin",
    "method": "term_sum",
    "risk_model": {
      "loss": {"family": "kotz", "params": {"r": 1.0, "gamma": 0.5}},
      "upsilon": [{"family": "pareto", "params": {"gamma": 1.0}}],
      "pi": [0.5, 0.5],
      "delta": [0.05]
    },
    "u0_grid": [25]
  })"),
                  config_error);
}

TEST_CASE("config parsing, diag command") {
  RunConfig c = parse_run_config(R"({
    "command": "diag",
    "criterion": "tony",
    "risk": {"family": "kotz", "params": {"r": 1.0, "gamma": 0.5}},
    "u_grid": [100, 200, 400]
  })");
  CHECK(c.criterion == "tony");
  CHECK(c.lambda == 1.0);

  CHECK_THROWS_AS(parse_run_config(R"({
    "command": "diag",
    "criterion": "nope",
    "risk": {"family": "kotz", "params": {"r": 1.0, "gamma": 0.5}},
    "u_grid": [100]
  })"),
                  config_error);

  SUBCASE("independence diagnostic block") {
    RunConfig d = parse_run_config(R"({
      "command": "diag",
      "criterion": "indep",
      "mixture": {"radius": {"family": "exponential", "params": {"rate": 1.0}},
                  "rho": 0.5},
      "n_grid": [100, 1000],
      "mc": {"n_samples": 2000000, "seed": 7}
    })");
    const ScaleMixture mx = build_mixture(d);
    CHECK(mx.spherical);
    CHECK(d.u_grid.size() == 2);
    // seed is mandatory for the sampling diagnostic
    CHECK_THROWS_AS(parse_run_config(R"({
      "command": "diag",
      "criterion": "indep",
      "mixture": {"radius": {"family": "exponential", "params": {"rate": 1.0}}},
      "n_grid": [100],
      "mc": {"n_samples": 2000000}
    })"),
                    config_error);
  }
}

TEST_CASE("load_run_config reports missing files") {
  CHECK_THROWS_AS(load_run_config("definitely_missing.json"), config_error);
}
