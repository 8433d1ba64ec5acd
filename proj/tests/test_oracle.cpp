#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rct/asymptotics.hpp"
#include "rct/dist.hpp"
#include "rct/errors.hpp"
#include "rct/oracle.hpp"
#include "rct/special.hpp"

using namespace rct;

// Reference tails below were frozen from an independent high-precision
// evaluation of the defining integrals (50-digit arithmetic), not from the
// code under test.

TEST_CASE("single-factor quadrature against closed forms") {
  SUBCASE("exponential radius, uniform factor: E1 tail") {
    // P(RS > u) = e^-u - u E1(u)
    ProductModel m(make_exponential(1.0), {make_scaling_uniform01()});
    struct Pin { double u, tail; };
    for (const Pin p : {Pin{10.0, 3.830240465631609e-6},
                        Pin{20.0, 9.404856430858149e-11},
                        Pin{40.0, 1.0126120948496111e-19}}) {
      const double closed = std::exp(-p.u) - p.u * expint_e1(p.u);
      CHECK(closed == doctest::Approx(p.tail).epsilon(1e-12));
      CHECK(exact_tail_quadrature(m, p.u) ==
            doctest::Approx(p.tail).epsilon(1e-7));
    }
  }
  SUBCASE("uniform radius, uniform factor near the endpoint") {
    // P(U1 U2 > u) = 1 - u + u log u
    ProductModel m(make_uniform01(), {make_scaling_uniform01()});
    for (double u : {0.9, 0.99, 0.999}) {
      const double closed = 1.0 - u + u * std::log(u);
      CHECK(exact_tail_quadrature(m, u) ==
            doctest::Approx(closed).epsilon(1e-8));
    }
  }
  SUBCASE("pareto radius, uniform factor") {
    // P(RS > u) = u^-g E[S^g] for u >= 1 (Pareto(g) at 1, S in [0,1])
    ProductModel m(make_pareto(2.0, 1.0), {make_scaling_uniform01()});
    for (double u : {2.0, 10.0})
      CHECK(exact_tail_quadrature(m, u) ==
            doctest::Approx(std::pow(u, -2.0) / 3.0).epsilon(1e-7));
  }
  SUBCASE("degenerate factor collapses to the radius tail") {
    ProductModel m(make_exponential(1.0), {make_scaling_degenerate_one()});
    CHECK(exact_tail_quadrature(m, 3.0) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
  }
}

TEST_CASE("product density quadrature") {
  // h(u) = E1(u) for Exp(1) x Uniform01
  ProductModel m(make_exponential(1.0), {make_scaling_uniform01()});
  for (double u : {1.0, 5.0, 10.0})
    CHECK(exact_density_quadrature(m, u) ==
          doctest::Approx(expint_e1(u)).epsilon(1e-7));
}

TEST_CASE("iterated folds handle two factors") {
  ProductModel m(make_exponential(1.0),
                 {make_scaling_uniform01(), make_scaling_uniform01()});
  struct Pin { double u, tail; };
  for (const Pin p : {Pin{5.0, 1.333621100603331e-4},
                      Pin{10.0, 3.0250783404740374e-7},
                      Pin{20.0, 4.1249115206946736e-12}}) {
    CHECK(exact_tail_nfold(m, p.u) ==
          doctest::Approx(p.tail).epsilon(5e-5));
  }
  SUBCASE("single factor agrees with the direct quadrature") {
    ProductModel m1(make_exponential(1.0), {make_scaling_uniform01()});
    CHECK(exact_tail_nfold(m1, 10.0) ==
          doctest::Approx(exact_tail_quadrature(m1, 10.0)).epsilon(1e-5));
  }
  SUBCASE("grid doubling flags too-coarse tables") {
    NfoldOptions opt;
    opt.grid_nodes = 16;
    CHECK_THROWS_AS(exact_tail_nfold(m, 10.0, NfoldMethod::iterated, opt),
                    oracle_error);
  }
  SUBCASE("montecarlo route agrees in the bulk") {
    NfoldOptions opt;
    opt.mc_samples = 2'000'000;
    opt.seed = 11;
    const double mc = exact_tail_nfold(m, 2.0, NfoldMethod::montecarlo, opt);
    CHECK(mc == doctest::Approx(exact_tail_nfold(m, 2.0)).epsilon(5e-3));
  }
}

TEST_CASE("mc tail is seed-deterministic and calibrated") {
  ProductModel m(make_exponential(1.0), {make_scaling_uniform01()});
  const MCEstimate a = mc_tail(m, 2.0, 500'000, 5);
  const MCEstimate b = mc_tail(m, 2.0, 500'000, 5);
  CHECK(a.value == b.value);
  CHECK(a.half_width_95 == b.half_width_95);
  const double truth = std::exp(-2.0) - 2.0 * expint_e1(2.0);
  CHECK(std::fabs(a.value - truth) < 3.0 * a.half_width_95);
  CHECK(mc_tail(m, 2.0, 500'000, 6).value != a.value);
}

TEST_CASE("convergence report tracks the approach to the limit") {
  ProductModel m(make_exponential(1.0), {make_scaling_uniform01()});
  const std::vector<double> grid = {5.0, 10.0, 20.0, 40.0};
  const ConvergenceReport r = convergence_report(
      m, [](const ProductModel& pm, double u) {
        return gumbel_product_tail(pm, u);
      },
      grid);
  REQUIRE(r.u_grid.size() == 4);
  REQUIRE(r.ratio.size() == 4);
  CHECK(r.method == "quadrature");
  CHECK(r.trend_ok);
  // exact/asymptotic ratio tends to 1 from below here
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r.ratio[i] == doctest::Approx(r.exact[i] / r.asympt[i]));
    CHECK(r.ratio[i] < 1.0);
    if (i) CHECK(r.ratio[i] > r.ratio[i - 1]);
  }
  // |ratio - 1| obeys the first-order error bound c/u with a small c
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::fabs(r.ratio[i] - 1.0) < 2.2 / r.u_grid[i]);

  SUBCASE("montecarlo method label and rough agreement") {
    ReportOptions opt;
    opt.method = OracleMethod::montecarlo;
    opt.mc_samples = 4'000'000;
    opt.seed = 3;
    const ConvergenceReport rm = convergence_report(
        m, [](const ProductModel& pm, double u) {
          return gumbel_product_tail(pm, u);
        },
        {2.0, 4.0}, opt);
    CHECK(rm.method == "montecarlo");
    CHECK(rm.exact[0] ==
          doctest::Approx(exact_tail_quadrature(m, 2.0)).epsilon(5e-3));
  }
}
