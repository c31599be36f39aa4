#include "densities.hpp"

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "common.hpp"
#include "quadrature.hpp"

namespace rih {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Wraps a boost distribution into total pdf/cdf on R plus quantile on (0,1).
template <class Dist>
TestDensity from_boost(const Dist& d, std::string name, Support sup) {
  TestDensity f;
  f.name = std::move(name);
  f.support = sup;
  f.pdf = [d, sup](double x) {
    if (x <= sup.lo || x >= sup.hi) return 0.0;
    return boost::math::pdf(d, x);
  };
  f.cdf = [d, sup](double x) {
    if (x <= sup.lo) return 0.0;
    if (x >= sup.hi) return 1.0;
    return boost::math::cdf(d, x);
  };
  f.quantile = [d](double q) { return boost::math::quantile(d, q); };
  return f;
}

double mixture_quantile_bisect(const std::function<double(double)>& cdf,
                               double q, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Local maxima of pdf by grid scan plus golden-section refinement. Used for
// mixtures where peak locations have no closed form.
std::vector<double> find_modes(const std::function<double(double)>& pdf,
                               double lo, double hi) {
  const int grid = 20001;
  std::vector<double> xs(grid), fs(grid);
  for (int i = 0; i < grid; ++i) {
    xs[std::size_t(i)] = lo + (hi - lo) * double(i) / double(grid - 1);
    fs[std::size_t(i)] = pdf(xs[std::size_t(i)]);
  }
  std::vector<double> modes;
  for (int i = 1; i + 1 < grid; ++i) {
    if (fs[std::size_t(i)] > fs[std::size_t(i - 1)] &&
        fs[std::size_t(i)] > fs[std::size_t(i + 1)]) {
      double a = xs[std::size_t(i - 1)], b = xs[std::size_t(i + 1)];
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c = b - gr * (b - a), d = a + gr * (b - a);
      double fc = pdf(c), fd = pdf(d);
      for (int it = 0; it < 120; ++it) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - gr * (b - a);
          fc = pdf(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + gr * (b - a);
          fd = pdf(d);
        }
      }
      modes.push_back(0.5 * (a + b));
    }
  }
  return modes;
}

}  // namespace

std::vector<double> TestDensity::sample(std::size_t n,
                                        std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<double> out(n);
  if (draw) {
    for (double& x : out) x = draw(rng);
  } else {
    for (double& x : out) x = quantile(rng.uniform_open());
  }
  return out;
}

TestDensity make_normal_mixture(std::vector<double> weights,
                                std::vector<double> means,
                                std::vector<double> sigmas, std::string name) {
  const std::size_t m = weights.size();
  if (m == 0 || means.size() != m || sigmas.size() != m) {
    throw std::invalid_argument("mixture needs equal-length weight/mean/sigma lists");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("mixture weights must be positive");
    wsum += w;
  }
  for (double& w : weights) w /= wsum;
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("mixture sigmas must be positive");
  }

  std::vector<boost::math::normal_distribution<>> comps;
  comps.reserve(m);
  for (std::size_t i = 0; i < m; ++i) comps.emplace_back(means[i], sigmas[i]);

  TestDensity f;
  f.name = std::move(name);
  f.support = {-kInf, kInf};
  f.pdf = [weights, comps](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      s += weights[i] * boost::math::pdf(comps[i], x);
    }
    return s;
  };
  f.cdf = [weights, comps](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      s += weights[i] * boost::math::cdf(comps[i], x);
    }
    return std::clamp(s, 0.0, 1.0);
  };
  double lo = means[0], hi = means[0], smax = sigmas[0];
  for (std::size_t i = 0; i < m; ++i) {
    lo = std::min(lo, means[i] - 10.0 * sigmas[i]);
    hi = std::max(hi, means[i] + 10.0 * sigmas[i]);
    smax = std::max(smax, sigmas[i]);
  }
  const double qlo = lo - 5.0 * smax, qhi = hi + 5.0 * smax;
  auto cdf = f.cdf;
  f.quantile = [cdf, qlo, qhi](double q) {
    return mixture_quantile_bisect(cdf, q, qlo, qhi);
  };
  f.draw = [weights, comps](Rng& rng) {
    const double u = rng.uniform_open();
    double acc = 0.0;
    std::size_t pick = comps.size() - 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      acc += weights[i];
      if (u <= acc) {
        pick = i;
        break;
      }
    }
    return boost::math::quantile(comps[pick], rng.uniform_open());
  };
  for (double t : find_modes(f.pdf, lo, hi)) {
    f.modes.push_back({t, ModeKind::finite, 0.0, 0.0});
  }
  return f;
}

TestDensity make_beta1(double beta) {
  if (!(beta >= 1.0)) throw std::invalid_argument("beta_1_b needs b >= 1");
  TestDensity f;
  char buf[32];
  std::snprintf(buf, sizeof buf, "beta_1_%g", beta);
  f.name = buf;
  f.support = {0.0, 1.0};
  f.fit_lo = 0.0;
  f.fit_hi = 1.0;
  f.pdf = [beta](double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return beta * std::pow(1.0 - x, beta - 1.0);
  };
  f.cdf = [beta](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - x, beta);
  };
  f.quantile = [beta](double q) { return 1.0 - std::pow(1.0 - q, 1.0 / beta); };
  // Monotone decreasing on [0, 1]: no isolated interior peak is declared.
  return f;
}

TestDensity make_pvalue_mixture(double pi0, double beta) {
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw std::invalid_argument("pi0 must lie in [0, 1]");
  if (!(beta >= 1.0)) throw std::invalid_argument("p-value mixture needs beta >= 1");
  TestDensity f;
  char buf[64];
  std::snprintf(buf, sizeof buf, "pvalue_mix_b%g_pi%g", beta, pi0);
  f.name = buf;
  f.support = {0.0, 1.0};
  f.fit_lo = 0.0;
  f.fit_hi = 1.0;
  f.pdf = [pi0, beta](double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return pi0 + (1.0 - pi0) * beta * std::pow(1.0 - x, beta - 1.0);
  };
  f.cdf = [pi0, beta](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return pi0 * x + (1.0 - pi0) * (1.0 - std::pow(1.0 - x, beta));
  };
  auto cdf = f.cdf;
  f.quantile = [cdf](double q) {
    return mixture_quantile_bisect(cdf, q, 0.0, 1.0);
  };
  f.draw = [pi0, beta](Rng& rng) {
    if (rng.uniform_open() <= pi0) return rng.uniform_open();
    return 1.0 - std::pow(1.0 - rng.uniform_open(), 1.0 / beta);
  };
  return f;
}

std::vector<TestDensity> catalog() {
  std::vector<TestDensity> out;

  {
    TestDensity f;
    f.name = "uniform";
    f.support = {0.0, 1.0};
    f.fit_lo = 0.0;
    f.fit_hi = 1.0;
    f.pdf = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
    f.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    f.quantile = [](double q) { return q; };
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::normal_distribution<>(0.0, 1.0), "normal",
                        {-kInf, kInf});
    f.modes.push_back({0.0, ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::lognormal_distribution<>(0.0, 1.0),
                        "lognormal", {0.0, kInf});
    f.fit_lo = 0.0;
    f.modes.push_back({std::exp(-1.0), ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::students_t_distribution<>(3.0), "t_3",
                        {-kInf, kInf});
    f.modes.push_back({0.0, ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  {
    // Shape 3, rate 3 (mean 1).
    auto f = from_boost(boost::math::gamma_distribution<>(3.0, 1.0 / 3.0),
                        "gamma_3_3", {0.0, kInf});
    f.fit_lo = 0.0;
    f.modes.push_back({2.0 / 3.0, ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::beta_distribution<>(3.0, 3.0), "beta_3_3",
                        {0.0, 1.0});
    f.fit_lo = 0.0;
    f.fit_hi = 1.0;
    f.modes.push_back({0.5, ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::chi_squared_distribution<>(1.0), "chisq_1",
                        {0.0, kInf});
    f.fit_lo = 0.0;
    f.square_integrable = false;  // pdf^2 ~ 1/x near 0
    const double q10 = f.quantile(0.1);
    f.modes.push_back({0.0, ModeKind::infinite_left_boundary, 0.0, q10});
    out.push_back(std::move(f));
  }
  {
    auto f = from_boost(boost::math::beta_distribution<>(0.5, 0.5),
                        "beta_0.5_0.5", {0.0, 1.0});
    f.fit_lo = 0.0;
    f.fit_hi = 1.0;
    f.square_integrable = false;
    const double q10 = f.quantile(0.1);
    const double q90 = f.quantile(0.9);
    f.modes.push_back({0.0, ModeKind::infinite_left_boundary, 0.0, q10});
    f.modes.push_back({1.0, ModeKind::infinite_right_boundary, q90, 1.0});
    out.push_back(std::move(f));
  }
  out.push_back(make_beta1(4.0));
  out.push_back(make_beta1(10.0));
  {
    TestDensity f;
    f.name = "triangular";
    f.support = {0.0, 1.0};
    f.fit_lo = 0.0;
    f.fit_hi = 1.0;
    f.pdf = [](double x) {
      if (x < 0.0 || x > 1.0) return 0.0;
      return 2.0 * (1.0 - std::abs(2.0 * x - 1.0));
    };
    f.cdf = [](double x) {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      if (x <= 0.5) return 2.0 * x * x;
      return 1.0 - 2.0 * (1.0 - x) * (1.0 - x);
    };
    f.quantile = [](double q) {
      if (q <= 0.5) return std::sqrt(0.5 * q);
      return 1.0 - std::sqrt(0.5 * (1.0 - q));
    };
    f.breakpoints = {0.5};
    f.modes.push_back({0.5, ModeKind::finite, 0.0, 0.0});
    out.push_back(std::move(f));
  }
  // Stand-ins for the multimodal shapes; parameters are ours.
  out.push_back(make_normal_mixture({0.75, 0.25}, {0.0, 2.5}, {1.0, 0.4},
                                    "bimodal_mix"));
  out.push_back(make_normal_mixture({0.2, 0.2, 0.2, 0.2, 0.2},
                                    {0.0, 6.0, 14.0, 26.0, 45.0},
                                    {0.3, 0.8, 1.6, 3.2, 6.4},
                                    "multiscale_mix"));
  return out;
}

namespace {

TestDensity parse_mixture_dsl(const std::string& id) {
  // "mix:w*N(mu,sigma)+w*N(mu,sigma)+..."
  const std::string body = id.substr(4);
  std::vector<double> w, mu, sg;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find('+', pos);
    if (next == std::string::npos) next = body.size();
    const std::string term = body.substr(pos, next - pos);
    double wi, mi, si;
    if (std::sscanf(term.c_str(), " %lf * N ( %lf , %lf )", &wi, &mi, &si) != 3) {
      throw std::invalid_argument("bad mixture term: " + term);
    }
    w.push_back(wi);
    mu.push_back(mi);
    sg.push_back(si);
    pos = next + 1;
  }
  if (w.empty()) throw std::invalid_argument("empty mixture expression");
  return make_normal_mixture(std::move(w), std::move(mu), std::move(sg), id);
}

}  // namespace

TestDensity density_by_id(const std::string& id) {
  for (auto& f : catalog()) {
    if (f.name == id) return f;
  }
  if (id.rfind("mix:", 0) == 0) return parse_mixture_dsl(id);
  if (id.rfind("beta_1_", 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string tail = id.substr(7);
      const double b = std::stod(tail, &used);
      if (used == tail.size()) return make_beta1(b);
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("unknown density id: " + id);
}

// Relative deviation mass of f0 around t within half-width gamma.
double deviation_ratio(const TestDensity& f0, double t, double gamma) {
  const double a = t - gamma, b = t + gamma;
  std::vector<double> brk = f0.breakpoints;
  if (std::isfinite(f0.support.lo)) brk.push_back(f0.support.lo);
  if (std::isfinite(f0.support.hi)) brk.push_back(f0.support.hi);
  const double mass = integrate(f0.pdf, a, b, brk, 20, 256);
  if (!(mass > 0.0)) return 0.0;
  const double fbar = mass / (b - a);
  const auto dev = [&](double x) { return std::abs(f0.pdf(x) - fbar); };
  return integrate(dev, a, b, brk, 20, 512) / mass;
}

double peak_tolerance(const TestDensity& f0, std::size_t mode_index) {
  if (mode_index >= f0.modes.size()) throw std::invalid_argument("mode index out of range");
  const Mode& m = f0.modes[mode_index];
  if (m.kind != ModeKind::finite) {
    throw std::invalid_argument("peak tolerance is defined for finite modes only");
  }
  double scale = f0.quantile(0.9) - f0.quantile(0.1);
  if (!std::isfinite(scale) || scale <= 0.0) scale = 1.0;

  double lo = 1e-6 * scale;
  if (deviation_ratio(f0, m.location, lo) > 0.2) {
    throw NumericError("peak criterion already exceeded at the smallest bracket");
  }
  double hi = lo;
  do {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0 * scale) {
      throw NumericError("no isolatable peak: criterion never exceeded");
    }
  } while (deviation_ratio(f0, m.location, hi) <= 0.2);

  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (deviation_ratio(f0, m.location, mid) > 0.2 ? hi : lo) = mid;
  }
  return 0.25 * (lo + hi);  // gamma* / 2
}

ToleranceVector mode_tolerances(const TestDensity& f0) {
  ToleranceVector tv;
  for (std::size_t i = 0; i < f0.modes.size(); ++i) {
    const Mode& m = f0.modes[i];
    ToleranceRegion r;
    if (m.kind == ModeKind::finite) {
      r.delta = peak_tolerance(f0, i);
      r.lo = m.location - r.delta;
      r.hi = m.location + r.delta;
      r.boundary = false;
    } else {
      r.lo = m.region_lo;
      r.hi = m.region_hi;
      r.boundary = true;
    }
    tv.regions.push_back(r);
  }
  auto sorted = tv.regions;
  std::sort(sorted.begin(), sorted.end(),
            [](const ToleranceRegion& a, const ToleranceRegion& b) {
              return a.lo < b.lo;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].lo < sorted[i - 1].hi) {
      throw NumericError("tolerance regions overlap for " + f0.name);
    }
  }
  return tv;
}

}  // namespace rih
