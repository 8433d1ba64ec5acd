#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rct/dist.hpp"
#include "rct/errors.hpp"
#include "rct/mc.hpp"
#include "rct/special.hpp"

using namespace rct;

namespace {

// survival should drop like the integral of the density (central difference)
void check_density_consistency(const DistributionSpec& d, double u,
                               double h = 1e-6, double tol = 1e-4) {
  const double lhs = (d.survival(u - h) - d.survival(u + h)) / (2.0 * h);
  CHECK(lhs == doctest::Approx(d.density(u)).epsilon(tol));
}

void check_quantile_roundtrip(const DistributionSpec& d) {
  for (double p : {0.1, 0.5, 0.9, 0.99}) {
    const double q = d.quantile(p);
    CHECK(1.0 - d.survival(q) == doctest::Approx(p).epsilon(1e-6));
  }
}

// one-sample KS of the sampler against the declared distribution
void check_sampler(const DistributionSpec& d, std::uint64_t seed = 17) {
  const int n = 20000;
  std::mt19937_64 rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = d.sampler(rng);
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = 1.0 - d.survival(xs[i]);
    ks = std::max(ks, std::fabs(F - (i + 1.0) / n));
    ks = std::max(ks, std::fabs(F - static_cast<double>(i) / n));
  }
  // 0.01-level one-sample KS critical value 1.63/sqrt(n)
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
}

}  // namespace

TEST_CASE("exponential basics") {
  DistributionSpec d = make_exponential(2.0);
  CHECK(d.survival(1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(d.log_survival(400.0) == doctest::Approx(-800.0));
  CHECK(d.aux_scale(10.0) == doctest::Approx(2.0));
  check_density_consistency(d, 0.7);
  check_quantile_roundtrip(d);
  check_sampler(d);
  CHECK(d.is_gumbel());
  CHECK(mean_excess(d, 5.0) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("pareto basics") {
  DistributionSpec d = make_pareto(2.0, 1.0);
  CHECK(d.survival(10.0) == doctest::Approx(0.01));
  CHECK(d.survival(0.5) == 1.0);
  check_density_consistency(d, 3.0);
  check_quantile_roundtrip(d);
  check_sampler(d);
  CHECK(d.is_frechet());
  // regular variation: Fbar(2u)/Fbar(u) -> 2^-gamma
  CHECK(d.survival(200.0) / d.survival(100.0) == doctest::Approx(0.25));
}

TEST_CASE("uniform01 and paper-order beta") {
  DistributionSpec u = make_uniform01();
  CHECK(u.survival(0.25) == doctest::Approx(0.75));
  check_sampler(u);

  DistributionSpec b = make_beta(2.0, 3.0);
  check_density_consistency(b, 0.4, 1e-6, 1e-5);
  check_quantile_roundtrip(b);
  check_sampler(b);
  // alpha is the exponent at the UPPER endpoint:
  // P(S > 1-eps) ~ Gamma(a+b)/(Gamma(a+1)Gamma(b)) eps^a
  const double c = gamma_fn(5.0) / (gamma_fn(3.0) * gamma_fn(3.0));
  for (double eps : {1e-3, 1e-4})
    CHECK(b.survival(1.0 - eps) / std::pow(eps, 2.0) ==
          doctest::Approx(c).epsilon(5e-3));
  CHECK(std::get<WeibullTail>(b.tail).gamma == 2.0);
}

TEST_CASE("kotz family") {
  DistributionSpec d = make_kotz(1.0, 0.0, 1.0, 0.5);
  CHECK(d.survival(4.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(d.log_survival(1e6) == doctest::Approx(-1000.0));
  CHECK(d.aux_scale(100.0) == doctest::Approx(0.05));
  check_density_consistency(d, 9.0);
  check_quantile_roundtrip(d);
  check_sampler(d);
  // w ~ 1/mean-excess in the far tail
  CHECK(1.0 / mean_excess(d, 400.0) ==
        doctest::Approx(d.aux_scale(400.0)).epsilon(0.06));

  SUBCASE("K < 1 with q = 0 carries an atom at 0") {
    DistributionSpec a = make_kotz(0.5, 0.0, 1.0, 1.0);
    CHECK(a.atom_at_lo == doctest::Approx(0.5));
    CHECK(a.support_lo == 0.0);
    CHECK(a.survival(0.1) == doctest::Approx(0.5 * std::exp(-0.1)));
  }
  SUBCASE("q > 0 shifts the support start past where K u^q e^-ru = 1") {
    DistributionSpec a = make_kotz(3.0, 1.0, 1.0, 1.0);
    CHECK(a.support_lo > 0.0);
    CHECK(a.survival(a.support_lo * 0.5) == 1.0);
    CHECK(a.survival(a.support_lo * 1.0001) < 1.0);
    check_quantile_roundtrip(a);
  }
}

TEST_CASE("near-one exponential factor") {
  DistributionSpec d = make_near_one_exp(1.0, 1.0);
  CHECK(d.survival(0.5) == doctest::Approx(std::exp(-2.0)));
  CHECK(d.atom_at_lo == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(d.tail_endpoint() == 1.0);
  CHECK(d.aux_scale(0.9) == doctest::Approx(100.0));
  const double p_atom = d.atom_at_lo;
  for (double p : {p_atom + 0.1, 0.9}) {
    const double q = d.quantile(p);
    CHECK(1.0 - d.survival(q) == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("lognormal deep tail stays finite in logs") {
  DistributionSpec d = make_lognormal(0.0, 1.0);
  CHECK(d.survival(1.0) == doctest::Approx(0.5));
  check_density_consistency(d, 2.0);
  check_quantile_roundtrip(d);
  check_sampler(d);
  const double ls = d.log_survival(1e40);  // z ~ 92; erfc underflows
  CHECK(std::isfinite(ls));
  // no jump across the Mills-ratio switch at z = 30
  const double u30 = std::exp(30.0);
  const double a = d.log_survival(u30 * (1.0 - 1e-9));
  const double b = d.log_survival(u30 * (1.0 + 1e-9));
  CHECK(std::fabs(a - b) < 1e-5);
}

TEST_CASE("degenerate point mass") {
  DistributionSpec d = make_degenerate(0.5);
  CHECK(d.survival(0.49) == 1.0);
  CHECK(d.survival(0.5) == 0.0);
  CHECK(d.atom_at_lo == 1.0);
  std::mt19937_64 rng(1);
  CHECK(d.sampler(rng) == 0.5);
}

TEST_CASE("power_scale keeps the declared class") {
  SUBCASE("frechet index divides by the power") {
    DistributionSpec d = power_scale(make_pareto(2.0, 1.0), 3.0, 2.0);
    CHECK(std::get<FrechetTail>(d.tail).gamma == doctest::Approx(1.0));
    // P(3 W^2 > u) = P(W > sqrt(u/3))
    CHECK(d.survival(12.0) == doctest::Approx(std::pow(2.0, -2.0)));
    check_quantile_roundtrip(d);
    check_sampler(d);
  }
  SUBCASE("gumbel scaling transforms consistently") {
    DistributionSpec d = power_scale(make_exponential(1.0), 2.0, 2.0);
    // X = 2 W^2: Fbar(u) = exp(-sqrt(u/2)); w(u) = d/du sqrt(u/2)
    CHECK(d.survival(8.0) == doctest::Approx(std::exp(-2.0)));
    const double u = 50.0;
    const double expected_w = 0.5 / std::sqrt(2.0 * u);
    CHECK(d.aux_scale(u) == doctest::Approx(expected_w).epsilon(1e-12));
    check_density_consistency(d, 5.0);
  }
  SUBCASE("weibull endpoint rescales") {
    DistributionSpec d = power_scale(make_uniform01(), 2.0, 1.0);
    CHECK(std::get<WeibullTail>(d.tail).endpoint == doctest::Approx(2.0));
    CHECK(d.survival(1.0) == doctest::Approx(0.5));
  }
}

TEST_CASE("builtin registry errors") {
  CHECK_THROWS_AS(make_builtin("nope", {}), config_error);
  CHECK_THROWS_AS(make_builtin("pareto", {}), config_error);  // missing gamma
  CHECK(make_builtin("kotz", {{"r", 1.0}, {"gamma", 0.5}}).name == "kotz");
}

TEST_CASE("mean_excess guards") {
  DistributionSpec d = make_uniform01();
  CHECK(mean_excess(d, 0.8) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK_THROWS_AS(mean_excess(d, 1.5), std::domain_error);
  DistributionSpec e = make_exponential(1.0);
  // a naive log-survival that underflows in linear space trips the guard
  DistributionSpec naive = e;
  naive.log_survival = [](double u) { return std::log(std::exp(-u)); };
  CHECK_THROWS_AS(mean_excess(naive, 1e6), unreliable_region_error);
  // aux_scale_from_mean_excess matches the closed form for Exp(1)
  auto w = aux_scale_from_mean_excess(e);
  CHECK(w(3.0) == doctest::Approx(1.0).epsilon(1e-8));
}
