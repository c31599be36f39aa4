#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"
#include "densities.hpp"
#include "quadrature.hpp"

using namespace rih;

namespace {

const std::vector<TestDensity>& cat() {
  static const std::vector<TestDensity> c = catalog();
  return c;
}

const TestDensity& by_name(const std::string& name) {
  for (const TestDensity& f : cat()) {
    if (f.name == name) return f;
  }
  REQUIRE(false);
  return cat().front();
}

}  // namespace

TEST_CASE("the catalog holds thirteen distinctly named densities") {
  std::set<std::string> names;
  for (const TestDensity& f : cat()) names.insert(f.name);
  CHECK(cat().size() == 13);
  CHECK(names.size() == 13);
  for (const char* expected :
       {"uniform", "normal", "lognormal", "t_3", "gamma_3_3", "beta_3_3",
        "chisq_1", "beta_0.5_0.5", "beta_1_4", "beta_1_10", "triangular",
        "bimodal_mix", "multiscale_mix"}) {
    CHECK(names.count(expected) == 1);
  }
}

TEST_CASE("catalog cdf and quantile are mutually inverse") {
  for (const TestDensity& f : cat()) {
    INFO(f.name);
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const double x = f.quantile(q);
      CHECK(f.cdf(x) == doctest::Approx(q).epsilon(1e-7));
    }
    // cdf is nondecreasing across the central quantiles.
    double prev = f.quantile(0.05);
    for (double q : {0.2, 0.4, 0.6, 0.8, 0.95}) {
      const double x = f.quantile(q);
      CHECK(x >= prev);
      prev = x;
    }
  }
}

TEST_CASE("quadrature over the pdf reproduces cdf differences") {
  for (const TestDensity& f : cat()) {
    INFO(f.name);
    const double a = f.quantile(0.2), b = f.quantile(0.8);
    const double mass = integrate(f.pdf, a, b, f.breakpoints);
    CHECK(mass == doctest::Approx(f.cdf(b) - f.cdf(a)).epsilon(1e-9));
  }
}

TEST_CASE("smooth catalog densities integrate to one over their bulk") {
  for (const TestDensity& f : cat()) {
    if (!f.square_integrable) continue;  // edge singularities need care
    INFO(f.name);
    const double a = f.quantile(1e-9), b = f.quantile(1.0 - 1e-9);
    std::vector<double> splits(f.breakpoints.begin(), f.breakpoints.end());
    for (double q : {1e-6, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-6}) {
      splits.push_back(f.quantile(q));
    }
    std::sort(splits.begin(), splits.end());
    const double mass = integrate(f.pdf, a, b, splits);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("pdf and cdf are total functions clamped outside the support") {
  const TestDensity& beta = by_name("beta_3_3");
  CHECK(beta.pdf(-0.5) == 0.0);
  CHECK(beta.pdf(1.5) == 0.0);
  CHECK(beta.cdf(-0.5) == 0.0);
  CHECK(beta.cdf(1.5) == 1.0);
  const TestDensity& normal = by_name("normal");
  CHECK(normal.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normal.support.lo == -std::numeric_limits<double>::infinity());

  const TestDensity& uniform = by_name("uniform");
  CHECK(uniform.fit_lo == 0.0);
  CHECK(uniform.fit_hi == 1.0);
  const TestDensity& gamma = by_name("gamma_3_3");
  CHECK(gamma.fit_lo == 0.0);
  CHECK(std::isnan(gamma.fit_hi));
  CHECK(std::isnan(normal.fit_lo));
}

TEST_CASE("sampling is seeded and deterministic") {
  for (const char* name : {"uniform", "gamma_3_3", "bimodal_mix"}) {
    const TestDensity& f = by_name(name);
    const std::vector<double> a = f.sample(64, 7);
    const std::vector<double> b = f.sample(64, 7);
    const std::vector<double> c = f.sample(64, 8);
    CHECK(a == b);
    CHECK(a != c);
  }
}

TEST_CASE("samples follow the declared distribution") {
  for (const TestDensity& f : cat()) {
    INFO(f.name);
    const std::vector<double> xs = f.sample(2000, 424242);
    for (double x : xs) {
      CHECK(x >= f.support.lo);
      CHECK(x <= f.support.hi);
    }
    // Empirical CDF at the deciles stays near the truth.
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double x = f.quantile(q);
      const double ecdf =
          double(std::upper_bound(sorted.begin(), sorted.end(), x) -
                 sorted.begin()) /
          double(sorted.size());
      CHECK(std::abs(ecdf - q) < 0.05);
    }
  }
}

TEST_CASE("mixture sampling uses the component draw") {
  const TestDensity& f = by_name("bimodal_mix");
  const std::vector<double> xs = f.sample(4000, 99);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  CHECK(std::abs(mean - 0.625) < 0.15);  // 0.75*0 + 0.25*2.5
}

TEST_CASE("densities are addressable by identifier") {
  CHECK(density_by_id("uniform").name == "uniform");
  CHECK(density_by_id("beta_1_4").name == "beta_1_4");
  CHECK(density_by_id("beta_1_7").name == "beta_1_7");

  const TestDensity mix = density_by_id("mix:0.5*N(0,0.1)+0.5*N(5,1)");
  CHECK(mix.name == "mix:0.5*N(0,0.1)+0.5*N(5,1)");
  const double expected = 0.5 / (0.1 * std::sqrt(2.0 * M_PI)) +
                          0.5 * std::exp(-12.5) / std::sqrt(2.0 * M_PI);
  CHECK(mix.pdf(0.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(mix.modes.size() == 2);

  CHECK_THROWS_AS(density_by_id("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(density_by_id("mix:banana"), std::invalid_argument);
  CHECK_THROWS_AS(density_by_id("beta_1_0.5"), std::invalid_argument);
}

TEST_CASE("mixture construction validates its parameters") {
  CHECK_THROWS_AS(make_normal_mixture({}, {}, {}, "m"), std::invalid_argument);
  CHECK_THROWS_AS(make_normal_mixture({1.0}, {0.0, 1.0}, {1.0}, "m"),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_normal_mixture({-1.0, 2.0}, {0.0, 1.0}, {1.0, 1.0}, "m"),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_normal_mixture({1.0}, {0.0}, {0.0}, "m"),
                  std::invalid_argument);
}

TEST_CASE("decreasing beta densities match their closed forms") {
  CHECK_THROWS_AS(make_beta1(0.5), std::invalid_argument);
  const TestDensity flat = make_beta1(1.0);
  CHECK(flat.name == "beta_1_1");
  CHECK(flat.pdf(0.3) == 1.0);
  const TestDensity b10 = make_beta1(10.0);
  CHECK(b10.pdf(0.0) == 10.0);
  CHECK(b10.cdf(0.5) == doctest::Approx(1.0 - std::pow(0.5, 10.0)).epsilon(1e-14));
  CHECK(b10.quantile(0.75) ==
        doctest::Approx(1.0 - std::pow(0.25, 0.1)).epsilon(1e-14));
  CHECK(b10.modes.empty());
}

TEST_CASE("p-value mixtures blend a uniform with a decreasing beta") {
  CHECK_THROWS_AS(make_pvalue_mixture(-0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pvalue_mixture(1.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_pvalue_mixture(0.5, 0.5), std::invalid_argument);

  const TestDensity f = make_pvalue_mixture(0.5, 10.0);
  CHECK(f.name == "pvalue_mix_b10_pi0.5");
  CHECK(f.pdf(1.0) == 0.5);  // the alternative density vanishes at one
  CHECK(f.pdf(0.0) == 0.5 + 0.5 * 10.0);
  CHECK(f.cdf(1.0) == 1.0);
  CHECK(f.cdf(0.0) == 0.0);
  const std::vector<double> xs = f.sample(500, 3);
  for (double x : xs) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("declared modes sit at the density peaks") {
  CHECK(by_name("normal").modes.size() == 1);
  CHECK(by_name("normal").modes[0].location == 0.0);
  CHECK(by_name("lognormal").modes[0].location ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(by_name("gamma_3_3").modes[0].location ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(by_name("beta_3_3").modes[0].location == 0.5);
  CHECK(by_name("triangular").modes[0].location == 0.5);

  const TestDensity& chisq = by_name("chisq_1");
  REQUIRE(chisq.modes.size() == 1);
  CHECK(chisq.modes[0].kind == ModeKind::infinite_left_boundary);

  const TestDensity& arcsine = by_name("beta_0.5_0.5");
  REQUIRE(arcsine.modes.size() == 2);
  CHECK(arcsine.modes[0].kind == ModeKind::infinite_left_boundary);
  CHECK(arcsine.modes[1].kind == ModeKind::infinite_right_boundary);

  const TestDensity& bimodal = by_name("bimodal_mix");
  REQUIRE(bimodal.modes.size() == 2);
  CHECK(std::abs(bimodal.modes[0].location - 0.0) < 0.05);
  CHECK(std::abs(bimodal.modes[1].location - 2.5) < 0.05);

  const TestDensity& multi = by_name("multiscale_mix");
  REQUIRE(multi.modes.size() == 5);
  const double means[] = {0.0, 6.0, 14.0, 26.0, 45.0};
  const double sigmas[] = {0.3, 0.8, 1.6, 3.2, 6.4};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(multi.modes[i].location - means[i]) < 0.2 * sigmas[i]);
  }
}

TEST_CASE("relative deviation mass of the triangular matches the closed form") {
  const TestDensity& tri = by_name("triangular");
  // Around the peak the criterion is gamma / (2 (1 - gamma)).
  CHECK(deviation_ratio(tri, 0.5, 0.2) == doctest::Approx(0.125).epsilon(1e-7));
  CHECK(deviation_ratio(tri, 0.5, 0.1) ==
        doctest::Approx(0.1 / 1.8).epsilon(1e-7));
}

TEST_CASE("the triangular peak tolerance is one seventh") {
  const TestDensity& tri = by_name("triangular");
  // Criterion ratio hits 0.2 at gamma = 2/7; the tolerance is half that.
  CHECK(std::abs(peak_tolerance(tri, 0) - 1.0 / 7.0) < 2e-6);
}

TEST_CASE("peak tolerance rejects misuse and degenerate shapes") {
  const TestDensity& tri = by_name("triangular");
  CHECK_THROWS_AS(peak_tolerance(tri, 5), std::invalid_argument);
  const TestDensity& chisq = by_name("chisq_1");
  CHECK_THROWS_AS(peak_tolerance(chisq, 0), std::invalid_argument);

  // A flat profile never satisfies the 20% criterion before the cap.
  TestDensity flat;
  flat.name = "flat_profile";
  flat.support = {-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  flat.pdf = [](double) { return 1.0; };
  flat.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  flat.quantile = [](double q) { return q; };
  flat.modes.push_back({0.5, ModeKind::finite, 0.0, 0.0});
  CHECK_THROWS_AS(peak_tolerance(flat, 0), NumericError);

  // A jump at the declared peak exceeds the criterion at every scale.
  TestDensity step;
  step.name = "step_profile";
  step.support = {0.0, 1.0};
  step.breakpoints = {0.5};
  step.pdf = [](double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return x <= 0.5 ? 1.5 : 0.5;
  };
  step.cdf = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x <= 0.5 ? 1.5 * x : 0.75 + 0.5 * (x - 0.5);
  };
  step.quantile = [](double q) {
    return q <= 0.75 ? q / 1.5 : 0.5 + (q - 0.75) / 0.5;
  };
  step.modes.push_back({0.5, ModeKind::finite, 0.0, 0.0});
  CHECK_THROWS_AS(peak_tolerance(step, 0), NumericError);
}

TEST_CASE("tolerance regions cover each mode and stay disjoint") {
  const TestDensity& gamma = by_name("gamma_3_3");
  const ToleranceVector tv = mode_tolerances(gamma);
  REQUIRE(tv.regions.size() == 1);
  CHECK(!tv.regions[0].boundary);
  CHECK(tv.regions[0].delta > 0.0);
  CHECK(tv.regions[0].lo == doctest::Approx(2.0 / 3.0 - tv.regions[0].delta));
  CHECK(tv.regions[0].hi == doctest::Approx(2.0 / 3.0 + tv.regions[0].delta));

  const TestDensity& chisq = by_name("chisq_1");
  const ToleranceVector ctv = mode_tolerances(chisq);
  REQUIRE(ctv.regions.size() == 1);
  CHECK(ctv.regions[0].boundary);
  CHECK(ctv.regions[0].lo == 0.0);
  CHECK(ctv.regions[0].hi == doctest::Approx(chisq.quantile(0.1)).epsilon(1e-12));
  CHECK(ctv.regions[0].delta == 0.0);

  const ToleranceVector atv = mode_tolerances(by_name("beta_0.5_0.5"));
  REQUIRE(atv.regions.size() == 2);
  CHECK(atv.regions[0].hi < atv.regions[1].lo);

  // Two declared peaks closer than their tolerances collide.
  const TestDensity& tri = by_name("triangular");
  TestDensity crowded = tri;
  crowded.modes.push_back({0.5001, ModeKind::finite, 0.0, 0.0});
  CHECK_THROWS_AS(mode_tolerances(crowded), NumericError);
}
