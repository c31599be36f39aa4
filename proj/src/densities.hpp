#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rng.hpp"

namespace rih {

enum class ModeKind { finite, infinite_left_boundary, infinite_right_boundary };

struct Mode {
  double location = 0.0;
  ModeKind kind = ModeKind::finite;
  // Declared tolerance region for boundary peaks; unused for finite modes.
  double region_lo = 0.0;
  double region_hi = 0.0;
};

struct Support {
  double lo;
  double hi;
};

// Test density with exact pdf/cdf/quantile and a seeded sampler.
// pdf is zero and cdf is clamped outside the support, so both are total on R.
struct TestDensity {
  std::string name;
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;  // defined on (0, 1)
  Support support{0.0, 1.0};
  std::vector<double> breakpoints;  // interior discontinuities or kinks
  std::vector<Mode> modes;
  bool square_integrable = true;
  // Endpoints to pin when fitting with known support; NaN = use the sample
  // extreme on that side.
  double fit_lo = std::numeric_limits<double>::quiet_NaN();
  double fit_hi = std::numeric_limits<double>::quiet_NaN();
  // Optional custom sampler; default is inverse-CDF.
  std::function<double(Rng&)> draw;

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;
};

// All built-in test densities.
std::vector<TestDensity> catalog();

// Catalog name, "beta_1_<b>", or a mixture expression like
// "mix:0.5*N(0,0.1)+0.5*N(5,1)".
TestDensity density_by_id(const std::string& id);

TestDensity make_normal_mixture(std::vector<double> weights,
                                std::vector<double> means,
                                std::vector<double> sigmas, std::string name);
TestDensity make_beta1(double beta);
// Two-groups p-value mixture: pi0 * 1 + (1 - pi0) * Beta(1, beta) on [0, 1].
TestDensity make_pvalue_mixture(double pi0, double beta);

struct ToleranceRegion {
  double lo = 0.0;
  double hi = 0.0;
  double delta = 0.0;  // half-width for finite modes; 0 for boundary regions
  bool boundary = false;
};

// Aligned with f0.modes; regions validated pairwise disjoint.
struct ToleranceVector {
  std::vector<ToleranceRegion> regions;
};

// Relative deviation mass of f0 from its local mean over [t - gamma,
// t + gamma]; the bracketing criterion behind peak_tolerance.
double deviation_ratio(const TestDensity& f0, double t, double gamma);

// Smallest gamma whose local relative-deviation mass exceeds 0.2, halved.
// Bracketing plus bisection to absolute 1e-6 on gamma. Finite modes only.
double peak_tolerance(const TestDensity& f0, std::size_t mode_index);

// Tolerance regions for every declared mode of f0.
ToleranceVector mode_tolerances(const TestDensity& f0);

}  // namespace rih
