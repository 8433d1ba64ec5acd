#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rct/asymptotics.hpp"
#include "rct/errors.hpp"
#include "rct/special.hpp"

using namespace rct;

TEST_CASE("product model validation") {
  CHECK_THROWS_AS(ProductModel(make_exponential(1.0), {}), std::domain_error);
  // factor support outside (0,1]
  ScalingSpec bad;
  bad.dist = make_pareto(1.0, 1.0);
  bad.alpha = 1.0;
  bad.slowly_varying = [](double) { return 1.0; };
  CHECK_THROWS_AS(ProductModel(make_exponential(1.0), {bad}),
                  std::domain_error);
}

TEST_CASE("frechet product tail via moments") {
  ProductModel m(make_pareto(2.0, 1.0), {make_scaling_uniform01()});
  // E[S^2] = 1/3 for Uniform01
  for (double u : {2.0, 10.0, 100.0}) {
    const ApproxResult r = breiman_tail(m, u);
    CHECK(r.value == doctest::Approx(std::pow(u, -2.0) / 3.0).epsilon(1e-10));
    CHECK(r.regime == "frechet");
    CHECK(r.formula_id == "breiman-product-tail");
  }
  SUBCASE("degenerate factor moment is a plain power") {
    ProductModel md(make_pareto(2.0, 1.0), {make_scaling_degenerate_one()});
    CHECK(breiman_tail(md, 10.0).value ==
          doctest::Approx(0.01).epsilon(1e-10));
  }
  SUBCASE("beta factor moment matches the closed form") {
    // E[S^gamma] for paper-order Beta(a,b): B(b+gamma, a)/B(b, a)
    ProductModel mb(make_pareto(2.0, 1.0), {make_scaling_beta(2.0, 3.0)});
    const double mom = std::exp(log_gamma(5.0) + log_gamma(5.0) -
                                log_gamma(7.0) - log_gamma(3.0));
    CHECK(breiman_tail(mb, 10.0).value ==
          doctest::Approx(0.01 * mom).epsilon(1e-8));
  }
  CHECK_THROWS_AS(breiman_tail(
                      ProductModel(make_exponential(1.0),
                                   {make_scaling_uniform01()}),
                      10.0),
                  std::domain_error);
}

TEST_CASE("gumbel product tail") {
  ProductModel m(make_exponential(1.0), {make_scaling_uniform01()});
  // Gamma(2) * Gbar(1 - 1/u) * e^-u = e^-u / u for Uniform01
  const ApproxResult r = gumbel_product_tail(m, 20.0);
  CHECK(r.value == doctest::Approx(std::exp(-20.0) / 20.0).epsilon(1e-12));
  CHECK(r.formula_id == "gumbel-product-tail");
  SUBCASE("pre-asymptotic guard") {
    CHECK_THROWS_AS(gumbel_product_tail(m, 0.5), pre_asymptotic_error);
  }
  SUBCASE("wrong class refused") {
    ProductModel f(make_pareto(1.0, 1.0), {make_scaling_uniform01()});
    CHECK_THROWS_AS(gumbel_product_tail(f, 10.0), std::domain_error);
  }
}

TEST_CASE("weibull product tail") {
  ProductModel m(make_uniform01(), {make_scaling_uniform01()});
  // gamma=1, alpha=1: Gamma(2)/Gamma(3) * (1-u)^2 = (1-u)^2/2
  const double u = 0.99;
  const ApproxResult r = weibull_product_tail(m, u);
  CHECK(r.value == doctest::Approx(0.5 * 1e-4).epsilon(1e-12));
  SUBCASE("endpoint must be one") {
    ProductModel bad(power_scale(make_uniform01(), 2.0, 1.0),
                     {make_scaling_uniform01()});
    CHECK_THROWS_AS(weibull_product_tail(bad, 1.5), std::domain_error);
  }
}

TEST_CASE("factor order never changes the result bits") {
  std::vector<ScalingSpec> fs = {make_scaling_uniform01(),
                                 make_scaling_beta(2.0, 3.0),
                                 make_scaling_beta(0.5, 1.0)};
  std::vector<ScalingSpec> rev(fs.rbegin(), fs.rend());
  SUBCASE("gumbel") {
    ProductModel a(make_exponential(1.0), fs);
    ProductModel b(make_exponential(1.0), rev);
    CHECK(gumbel_product_tail(a, 25.0).log_value ==
          gumbel_product_tail(b, 25.0).log_value);
  }
  SUBCASE("weibull") {
    ProductModel a(make_uniform01(), fs);
    ProductModel b(make_uniform01(), rev);
    CHECK(weibull_product_tail(a, 0.995).log_value ==
          weibull_product_tail(b, 0.995).log_value);
  }
  SUBCASE("frechet") {
    ProductModel a(make_pareto(2.0, 1.0), fs);
    ProductModel b(make_pareto(2.0, 1.0), rev);
    CHECK(breiman_tail(a, 30.0).log_value == breiman_tail(b, 30.0).log_value);
  }
}

TEST_CASE("density ratio limits") {
  ProductModel m(make_pareto(2.5, 1.0), {make_scaling_uniform01()});
  CHECK(frechet_density_ratio(
            m, FrechetDensityCondition::factor_density_bounded) == 2.5);
  CHECK(frechet_density_ratio(m, FrechetDensityCondition::factor_density_bounded,
                              3.0) == 3.0);

  ProductModel w(make_uniform01(), {make_scaling_beta(0.5, 1.0)});
  CHECK(weibull_density_ratio(w) == doctest::Approx(1.5));
  SUBCASE("needs a valid density exponent") {
    ProductModel d(make_uniform01(), {make_scaling_degenerate_one()});
    CHECK_THROWS_AS(weibull_density_ratio(d), std::domain_error);
  }

  ProductModel g(make_exponential(1.0), {make_scaling_uniform01()});
  const ApproxResult gd = gumbel_density(g, 20.0, true);
  CHECK(gd.value ==
        doctest::Approx(1.0 * gumbel_product_tail(g, 20.0).value));
  CHECK_THROWS_AS(gumbel_density(g, 20.0, false), std::domain_error);

  const VmRatioPrediction vm = vm_density_ratio_check(g, 20.0, 1.5, true);
  CHECK(vm.predicted == doctest::Approx(std::exp(-1.5)));
  CHECK(vm.oracle_needed);
}

TEST_CASE("conditional tail expectation asymptotics") {
  DistributionSpec e = make_exponential(2.0);
  CHECK(cte_asymptotic(e, 10.0) == doctest::Approx(10.5));
  ProductModel m(e, {make_scaling_uniform01()});
  CHECK(cte_asymptotic(m, 10.0) == doctest::Approx(10.5));
  // Exp(1): CTE(q)/q = (q+1)/q at q = -log(1-p)
  DistributionSpec e1 = make_exponential(1.0);
  const double p = 1.0 - std::exp(-20.0);
  CHECK(cte_var_ratio(e1, p) == doctest::Approx(21.0 / 20.0).epsilon(1e-9));
  // exceedance parameterization reaches levels below machine epsilon
  CHECK(cte_var_ratio_from_exceedance(e1, std::exp(-50.0)) ==
        doctest::Approx(51.0 / 50.0).epsilon(1e-9));
  CHECK(cte_var_ratio_from_exceedance(e1, std::exp(-20.0)) ==
        doctest::Approx(cte_var_ratio(e1, p)).epsilon(1e-9));
  CHECK_THROWS_AS(cte_var_ratio_from_exceedance(e1, 1.5), std::domain_error);
  CHECK_THROWS_AS(cte_asymptotic(make_pareto(1.0, 1.0), 5.0),
                  std::domain_error);
}
