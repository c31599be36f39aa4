#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rih {

// Gauss-Legendre nodes and weights on [-1, 1], any order >= 1.
struct GaussLegendre {
  explicit GaussLegendre(int order);
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Integral of f over [a, b]. The domain splits at the interior breakpoints
// (estimate bin edges, density kinks) and every panel is further subdivided
// so none is wider than (b - a) / refine; a fixed-order rule runs per panel.
// Nodes are always interior, so f is never evaluated at panel edges.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> interior_breaks, int order = 20,
                 int refine = 128);

}  // namespace rih
