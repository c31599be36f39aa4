#pragma once

#include <string>
#include <vector>

#include "densities.hpp"
#include "model.hpp"

namespace rih {

enum class LossKind { hellinger, l2, kl, pid };

LossKind loss_from_string(const std::string& s);
std::string to_string(LossKind k);

// Hellinger distance between the true density and a histogram estimate.
// Panels merge histogram breaks with f0 breakpoints; the f0 mass outside the
// histogram support enters analytically through the cdf.
double hellinger(const TestDensity& f0, const HistogramEstimate& est,
                 int order = 20);

// Exact closed form for two piecewise-constant densities.
double hellinger(const HistogramEstimate& a, const HistogramEstimate& b);

// L2 norm of f0 - est. Tails beyond the f0 quantiles 1e-10 / 1-1e-10 are
// dropped; the associated error is bounded by sqrt of the squared-density
// tail mass, negligible for the catalog. Requires square-integrable f0.
double l2_loss(const TestDensity& f0, const HistogramEstimate& est,
               int order = 20);

// KL divergence of est from f0. Returns +infinity when f0 has mass where the
// estimate is zero.
double kl_loss(const TestDensity& f0, const HistogramEstimate& est,
               int order = 20);

// Mode locations of a histogram: midpoints of maximal equal-height runs that
// sit strictly above both neighbors; a boundary run qualifies when its single
// interior neighbor is strictly lower.
std::vector<double> extract_modes(const HistogramEstimate& est);

// Peak identification deficiency: unidentified true modes plus spurious
// estimate modes, (l0 - C) + (l - C).
int pid_loss(const TestDensity& f0, const ToleranceVector& tol,
             const HistogramEstimate& est);

}  // namespace rih
