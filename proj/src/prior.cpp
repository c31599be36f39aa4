#include "prior.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "common.hpp"

namespace rih {

ReferenceDensity ReferenceDensity::uniform() {
  ReferenceDensity g;
  g.name = "uniform";
  g.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  return g;
}

KPrior KPrior::power(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("power prior needs exponent > 0");
  return {Kind::power, m};
}

KPrior KPrior::poisson(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson prior needs rate > 0");
  return {Kind::poisson, lambda};
}

KPrior KPrior::from_string(const std::string& s) {
  if (s == "uniform") return uniform();
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string head = s.substr(0, colon);
    const std::string tail = s.substr(colon + 1);
    try {
      std::size_t used = 0;
      double v = std::stod(tail, &used);
      if (used == tail.size()) {
        if (head == "power") return power(v);
        if (head == "poisson") return poisson(v);
      }
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("unknown k-prior: " + s);
}

std::string KPrior::to_string() const {
  char buf[64];
  switch (kind) {
    case Kind::uniform:
      return "uniform";
    case Kind::power:
      std::snprintf(buf, sizeof buf, "power:%g", param);
      return buf;
    case Kind::poisson:
      std::snprintf(buf, sizeof buf, "poisson:%g", param);
      return buf;
  }
  return "?";
}

PriorConfig::PriorConfig(double a_total, ReferenceDensity g0, KPrior k_prior,
                         int k_n)
    : a_total_(a_total), g0_(std::move(g0)), k_prior_(k_prior), k_n_(k_n) {
  if (!(a_total > 0.0) || !std::isfinite(a_total)) {
    throw std::invalid_argument("concentration a must be positive and finite");
  }
  if (k_n < 1) throw std::invalid_argument("k_n must be at least 1");
  if (!g0_.cdf) g0_ = ReferenceDensity::uniform();

  // Unnormalized log weights, then log-sum-exp normalization over {1..k_n}.
  log_pk_.resize(std::size_t(k_n));
  for (int k = 1; k <= k_n; ++k) {
    double lw = 0.0;
    switch (k_prior_.kind) {
      case KPrior::Kind::uniform:
        lw = 0.0;
        break;
      case KPrior::Kind::power:
        lw = -k_prior_.param * std::log(double(k));
        break;
      case KPrior::Kind::poisson:
        lw = double(k) * std::log(k_prior_.param) - log_gamma(double(k) + 1.0);
        break;
    }
    log_pk_[std::size_t(k - 1)] = lw;
  }
  double mx = *std::max_element(log_pk_.begin(), log_pk_.end());
  double sum = 0.0;
  for (double lw : log_pk_) sum += std::exp(lw - mx);
  const double log_z = mx + std::log(sum);
  for (double& lw : log_pk_) lw -= log_z;
}

double PriorConfig::log_pk(int k) const {
  if (k < 1 || k > k_n_) return -std::numeric_limits<double>::infinity();
  return log_pk_[std::size_t(k - 1)];
}

}  // namespace rih
