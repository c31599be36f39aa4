#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "common.hpp"

namespace rih {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  const int n = order;
  nodes.resize(std::size_t(n));
  weights.resize(std::size_t(n));
  // Newton iteration on the Legendre polynomial from the Chebyshev guess.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
    double p_prime = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 =
            ((2.0 * j - 1.0) * x * p1 - (double(j) - 1.0) * p0) / double(j);
        p0 = p1;
        p1 = p2;
      }
      p_prime = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / p_prime;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One clean-up pass of p at the converged x for the weight.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 =
          ((2.0 * j - 1.0) * x * p1 - (double(j) - 1.0) * p0) / double(j);
      p0 = p1;
      p1 = p2;
    }
    p_prime = double(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * p_prime * p_prime);
    nodes[std::size_t(i)] = -x;
    weights[std::size_t(i)] = w;
    nodes[std::size_t(n - 1 - i)] = x;
    weights[std::size_t(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[std::size_t(n / 2)] = 0.0;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> interior_breaks, int order,
                 int refine) {
  if (!(b > a)) return 0.0;
  if (refine < 1) refine = 1;
  const GaussLegendre rule(order);

  std::vector<double> edges;
  edges.reserve(interior_breaks.size() + 2);
  edges.push_back(a);
  for (double x : interior_breaks) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double max_w = (b - a) / double(refine);
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    const int chunks = std::max(1, int(std::ceil((hi - lo) / max_w)));
    const double cw = (hi - lo) / double(chunks);
    for (int c = 0; c < chunks; ++c) {
      const double lo_c = lo + cw * double(c);
      const double mid = lo_c + 0.5 * cw;
      const double half = 0.5 * cw;
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        s += rule.weights[q] * f(mid + half * rule.nodes[q]);
      }
      total += s * half;
    }
  }
  if (!std::isfinite(total)) throw NumericError("quadrature produced a non-finite value");
  return total;
}

}  // namespace rih
