#include "losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "common.hpp"
#include "quadrature.hpp"

namespace rih {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Histogram edges plus f0 kinks and support endpoints, for panel splitting.
std::vector<double> merge_breaks(const TestDensity& f0,
                                 const HistogramEstimate& est) {
  std::vector<double> brk = est.breaks();
  for (double x : f0.breakpoints) brk.push_back(x);
  if (std::isfinite(f0.support.lo)) brk.push_back(f0.support.lo);
  if (std::isfinite(f0.support.hi)) brk.push_back(f0.support.hi);
  return brk;
}

}  // namespace

LossKind loss_from_string(const std::string& s) {
  if (s == "hellinger") return LossKind::hellinger;
  if (s == "l2") return LossKind::l2;
  if (s == "kl") return LossKind::kl;
  if (s == "pid") return LossKind::pid;
  throw std::invalid_argument("unknown loss: " + s);
}

std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::hellinger: return "hellinger";
    case LossKind::l2: return "l2";
    case LossKind::kl: return "kl";
    case LossKind::pid: return "pid";
  }
  return "?";
}

double hellinger(const TestDensity& f0, const HistogramEstimate& est,
                 int order) {
  const double a = est.transform().lo, b = est.transform().hi;
  const auto integrand = [&](double x) {
    const double d = std::sqrt(std::max(f0.pdf(x), 0.0)) - std::sqrt(est(x));
    return d * d;
  };
  double d2 = integrate(integrand, a, b, merge_breaks(f0, est), order);
  d2 += f0.cdf(a) + (1.0 - f0.cdf(b));
  return std::sqrt(std::max(d2, 0.0));
}

double hellinger(const HistogramEstimate& a, const HistogramEstimate& b) {
  std::vector<double> edges = a.breaks();
  for (double x : b.breaks()) edges.push_back(x);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  double d2 = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const double d = std::sqrt(a(mid)) - std::sqrt(b(mid));
    d2 += d * d * (edges[i + 1] - edges[i]);
  }
  return std::sqrt(std::max(d2, 0.0));
}

double l2_loss(const TestDensity& f0, const HistogramEstimate& est,
               int order) {
  if (!f0.square_integrable) {
    throw std::invalid_argument("l2 loss not applicable: " + f0.name +
                                " is not square-integrable");
  }
  const double a = est.transform().lo, b = est.transform().hi;
  const auto core = [&](double x) {
    const double d = f0.pdf(x) - est(x);
    return d * d;
  };
  double total = integrate(core, a, b, merge_breaks(f0, est), order);

  const auto f0sq = [&](double x) {
    const double v = f0.pdf(x);
    return v * v;
  };
  const double qlo = std::max(f0.quantile(1e-10), f0.support.lo);
  const double qhi = std::min(f0.quantile(1.0 - 1e-10), f0.support.hi);
  if (qlo < a) total += integrate(f0sq, qlo, a, f0.breakpoints, order);
  if (qhi > b) total += integrate(f0sq, b, qhi, f0.breakpoints, order);
  return std::sqrt(std::max(total, 0.0));
}

double kl_loss(const TestDensity& f0, const HistogramEstimate& est,
               int order) {
  const double a = est.transform().lo, b = est.transform().hi;
  const double outside = f0.cdf(a) + (1.0 - f0.cdf(b));
  if (outside > 1e-12) return kInf;
  bool zero_est_with_mass = false;
  const auto integrand = [&](double x) {
    const double f = f0.pdf(x);
    if (f <= 1e-300) return 0.0;
    const double g = est(x);
    if (g <= 0.0) {
      zero_est_with_mass = true;
      return 0.0;
    }
    return f * std::log(f / g);
  };
  const double v = integrate(integrand, a, b, merge_breaks(f0, est), order);
  return zero_est_with_mass ? kInf : v;
}

std::vector<double> extract_modes(const HistogramEstimate& est) {
  const std::vector<double> h = est.heights();
  const std::vector<double> brk = est.breaks();

  // Maximal runs of equal heights (relative tolerance absorbs arithmetic
  // noise between bins that share one posterior probability-to-width ratio).
  struct Run {
    std::size_t first, last;
    double height;
  };
  std::vector<Run> runs;
  const auto same = [](double x, double y) {
    return std::abs(x - y) <= 1e-9 * std::max({std::abs(x), std::abs(y), 1e-300});
  };
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!runs.empty() && same(runs.back().height, h[i])) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i, h[i]});
    }
  }

  std::vector<double> modes;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const bool left_ok = r > 0 ? runs[r - 1].height < runs[r].height : runs.size() > 1;
    const bool right_ok =
        r + 1 < runs.size() ? runs[r + 1].height < runs[r].height : runs.size() > 1;
    if (left_ok && right_ok) {
      modes.push_back(0.5 * (brk[runs[r].first] + brk[runs[r].last + 1]));
    }
  }
  return modes;
}

int pid_loss(const TestDensity& f0, const ToleranceVector& tol,
             const HistogramEstimate& est) {
  if (tol.regions.size() != f0.modes.size()) {
    throw std::invalid_argument("tolerance vector does not match the density's modes");
  }
  const std::vector<double> s = extract_modes(est);
  const int l0 = int(f0.modes.size());
  const int l = int(s.size());
  int matched = 0;
  for (std::size_t j = 0; j < tol.regions.size(); ++j) {
    const ToleranceRegion& r = tol.regions[j];
    bool hit = false;
    if (r.boundary) {
      for (double si : s) {
        if (si >= r.lo && si <= r.hi) {
          hit = true;
          break;
        }
      }
    } else {
      const double t = f0.modes[j].location;
      for (double si : s) {
        if (std::abs(si - t) < r.delta) {
          hit = true;
          break;
        }
      }
    }
    if (hit) ++matched;
  }
  return (l0 - matched) + (l - matched);
}

}  // namespace rih
