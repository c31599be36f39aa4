#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "densities.hpp"
#include "losses.hpp"
#include "model.hpp"

using namespace rih;

namespace {

const TestDensity& by_name(const char* name) {
  static const std::vector<TestDensity> c = catalog();
  for (const TestDensity& f : c) {
    if (f.name == name) return f;
  }
  REQUIRE(false);
  return c.front();
}

HistogramEstimate box(std::vector<double> unit_breaks, std::vector<double> probs,
                      double lo = 0.0, double hi = 1.0) {
  return HistogramEstimate(std::move(unit_breaks), std::move(probs),
                           SupportTransform{lo, hi});
}

}  // namespace

TEST_CASE("loss names round trip") {
  CHECK(loss_from_string("hellinger") == LossKind::hellinger);
  CHECK(loss_from_string("l2") == LossKind::l2);
  CHECK(loss_from_string("kl") == LossKind::kl);
  CHECK(loss_from_string("pid") == LossKind::pid);
  for (LossKind k :
       {LossKind::hellinger, LossKind::l2, LossKind::kl, LossKind::pid}) {
    CHECK(loss_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(loss_from_string("banana"), std::invalid_argument);
}

TEST_CASE("hellinger distance of a perfect uniform fit is zero") {
  const double d = hellinger(by_name("uniform"), box({0.0, 1.0}, {1.0}));
  CHECK(std::abs(d) <= 1e-9);
}

TEST_CASE("hellinger distance matches the closed form against the uniform") {
  // Heights 1.5 and 0.5 on the two halves of the unit interval.
  const double d = hellinger(by_name("uniform"), box({0.0, 0.5, 1.0}, {0.75, 0.25}));
  CHECK(d == doctest::Approx(0.26105238444010318).epsilon(1e-10));

  // Mass confined to the left half: d_H = sqrt(2 - sqrt(2)).
  const double half =
      hellinger(by_name("uniform"), box({0.0, 0.5, 1.0}, {1.0, 0.0}));
  CHECK(half == doctest::Approx(0.76536686473017954).epsilon(1e-10));
  // Same density written as a single bin on [0, 0.5]: the missing mass
  // enters through the cdf tail instead of the integrand.
  const double half2 =
      hellinger(by_name("uniform"), box({0.0, 1.0}, {1.0}, 0.0, 0.5));
  CHECK(half2 == doctest::Approx(0.76536686473017954).epsilon(1e-10));
}

TEST_CASE("mass outside the estimate support enters through the cdf") {
  const double d =
      hellinger(by_name("normal"), box({0.0, 1.0}, {1.0}, -1.0, 1.0));
  CHECK(d == doctest::Approx(0.59317310023656731).epsilon(1e-10));
}

TEST_CASE("piecewise closed form agrees with the quadrature route") {
  const HistogramEstimate a = box({0.0, 1.0}, {1.0});
  const HistogramEstimate b = box({0.0, 0.5, 1.0}, {0.75, 0.25});
  const double exact = hellinger(a, b);
  CHECK(exact == doctest::Approx(0.26105238444010318).epsilon(1e-12));
  CHECK(exact ==
        doctest::Approx(hellinger(by_name("uniform"), b)).epsilon(1e-10));
  CHECK(hellinger(a, a) == 0.0);
  CHECK(hellinger(a, b) == hellinger(b, a));
}

TEST_CASE("histograms with disjoint supports are maximally distant") {
  const HistogramEstimate a = box({0.0, 1.0}, {1.0}, 0.0, 1.0);
  const HistogramEstimate b = box({0.0, 1.0}, {1.0}, 2.0, 3.0);
  CHECK(hellinger(a, b) == std::sqrt(2.0));
  CHECK(hellinger(by_name("uniform"), b) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("l2 loss matches closed forms and covers the tails") {
  CHECK(l2_loss(by_name("uniform"), box({0.0, 0.5, 1.0}, {0.75, 0.25})) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(l2_loss(by_name("uniform"), box({0.0, 1.0}, {1.0})) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(l2_loss(by_name("normal"), box({0.0, 1.0}, {1.0}, -1.0, 1.0)) ==
        doctest::Approx(0.31528606001025838).epsilon(1e-9));
}

TEST_CASE("l2 loss refuses non-square-integrable targets") {
  CHECK_THROWS_AS(l2_loss(by_name("chisq_1"), box({0.0, 1.0}, {1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(l2_loss(by_name("beta_0.5_0.5"), box({0.0, 1.0}, {1.0})),
                  std::invalid_argument);
}

TEST_CASE("kl divergence matches the closed form for a two-bin estimate") {
  const double v = kl_loss(by_name("uniform"), box({0.0, 0.5, 1.0}, {0.75, 0.25}));
  CHECK(v == doctest::Approx(0.14384103622589046).epsilon(1e-10));
  CHECK(kl_loss(by_name("uniform"), box({0.0, 1.0}, {1.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kl divergence is infinite when the estimate misses mass") {
  const double inf = std::numeric_limits<double>::infinity();
  // Support too small: a quarter of the true mass lies beyond the estimate.
  CHECK(kl_loss(by_name("uniform"), box({0.0, 1.0}, {1.0}, 0.0, 0.75)) == inf);
  // Zero-height bin where the true density is positive.
  CHECK(kl_loss(by_name("uniform"), box({0.0, 0.5, 1.0}, {1.0, 0.0})) == inf);
}

TEST_CASE("mode extraction ignores flat histograms") {
  CHECK(extract_modes(box({0.0, 1.0}, {1.0})).empty());
  CHECK(extract_modes(box({0.0, 0.5, 1.0}, {0.5, 0.5})).empty());
}

TEST_CASE("mode extraction finds interior peaks at bin midpoints") {
  // Heights (1, 7, 1) over thirds.
  const auto modes =
      extract_modes(box({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {1.0 / 9, 7.0 / 9, 1.0 / 9}));
  REQUIRE(modes.size() == 1);
  CHECK(modes[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("a plateau counts as one mode at the midpoint of its run") {
  // Heights (1, 3, 3, 1) over quarters.
  const auto modes = extract_modes(
      box({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0625, 0.1875, 0.1875, 0.0625}));
  // Probabilities chosen so the two middle heights are 0.75 exactly.
  REQUIRE(modes.size() == 1);
  CHECK(modes[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("near-equal heights merge into one run") {
  const auto merged =
      extract_modes(box({0.0, 0.5, 1.0}, {0.5, 0.5 + 5e-13}));
  CHECK(merged.empty());  // within the relative tolerance: one flat run
  const auto split = extract_modes(box({0.0, 0.5, 1.0}, {0.5, 0.5 + 5e-6}));
  REQUIRE(split.size() == 1);  // clearly higher second bin: a boundary mode
  CHECK(split[0] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("boundary runs count when their single neighbor is lower") {
  const auto left = extract_modes(box({0.0, 0.5, 1.0}, {0.75, 0.25}));
  REQUIRE(left.size() == 1);
  CHECK(left[0] == doctest::Approx(0.25).epsilon(1e-14));

  const auto right = extract_modes(box({0.0, 0.5, 1.0}, {0.25, 0.75}));
  REQUIRE(right.size() == 1);
  CHECK(right[0] == doctest::Approx(0.75).epsilon(1e-14));

  // Monotone decreasing heights: only the first bin is a mode.
  const auto mono = extract_modes(
      box({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {0.5, 1.0 / 3, 1.0 / 6}));
  REQUIRE(mono.size() == 1);
  CHECK(mono[0] == doctest::Approx(1.0 / 6).epsilon(1e-13));
}

TEST_CASE("a valley yields two modes") {
  const auto modes = extract_modes(
      box({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {3.0 / 7, 1.0 / 7, 3.0 / 7}));
  REQUIRE(modes.size() == 2);
  CHECK(modes[0] == doctest::Approx(1.0 / 6).epsilon(1e-13));
  CHECK(modes[1] == doctest::Approx(5.0 / 6).epsilon(1e-13));
}

TEST_CASE("modes live on the data scale") {
  const auto modes = extract_modes(
      box({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {1.0 / 9, 7.0 / 9, 1.0 / 9}, 10.0, 16.0));
  REQUIRE(modes.size() == 1);
  CHECK(modes[0] == doctest::Approx(13.0).epsilon(1e-13));
}

TEST_CASE("peak identification deficiency counts misses and fakes") {
  const TestDensity& tri = by_name("triangular");
  const ToleranceVector tol = mode_tolerances(tri);

  // Peak bin centered on the true mode: perfect identification.
  const HistogramEstimate hit =
      box({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {1.0 / 9, 7.0 / 9, 1.0 / 9});
  CHECK(pid_loss(tri, tol, hit) == 0);

  // Flat estimate: one miss, no fakes.
  CHECK(pid_loss(tri, tol, box({0.0, 1.0}, {1.0})) == 1);

  // Sharp peak far from the true mode: one miss plus one fake.
  const HistogramEstimate wrong = box({0.0, 0.85, 0.95, 1.0}, {0.1, 0.85, 0.05});
  CHECK(pid_loss(tri, tol, wrong) == 2);

  // True peak identified, second spurious peak appears: one fake.
  const HistogramEstimate extra = box({0.0, 0.45, 0.55, 0.85, 0.95, 1.0},
                                      {0.1, 0.5, 0.1, 0.25, 0.05});
  CHECK(pid_loss(tri, tol, extra) == 1);
}

TEST_CASE("finite-mode matching is strict at the tolerance edge") {
  // All quantities dyadic so the strict comparison is exact: the true mode
  // sits at 0.5 and the tolerance half-width is 0.125.
  const TestDensity& tri = by_name("triangular");
  ToleranceVector tol;
  tol.regions.push_back({0.375, 0.625, 0.125, false});

  // Estimate peak midpoint exactly at location + delta: not a match.
  const HistogramEstimate edge = box({0.0, 0.5, 0.75, 1.0}, {0.2, 0.7, 0.1});
  CHECK(pid_loss(tri, tol, edge) == 2);
  // Peak midpoint at 0.5625, strictly inside: a match.
  const HistogramEstimate inside = box({0.0, 0.5, 0.625, 1.0}, {0.2, 0.7, 0.1});
  CHECK(pid_loss(tri, tol, inside) == 0);
}

TEST_CASE("boundary modes match anywhere inside their declared region") {
  const TestDensity& chisq = by_name("chisq_1");
  const ToleranceVector tol = mode_tolerances(chisq);
  const double q10 = chisq.quantile(0.1);

  const HistogramEstimate good =
      box({0.0, q10 / 5.0, 1.0}, {0.6, 0.4}, 0.0, 5.0);
  CHECK(pid_loss(chisq, tol, good) == 0);

  const HistogramEstimate bad = box({0.0, 0.5, 0.7, 1.0}, {0.1, 0.8, 0.1}, 0.0, 5.0);
  CHECK(pid_loss(chisq, tol, bad) == 2);
}

TEST_CASE("tolerance vectors must align with the declared modes") {
  const TestDensity& tri = by_name("triangular");
  ToleranceVector wrong;  // empty, but the triangular declares one mode
  CHECK_THROWS_AS(pid_loss(tri, wrong, box({0.0, 1.0}, {1.0})),
                  std::invalid_argument);
}
