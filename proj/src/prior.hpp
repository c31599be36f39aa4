#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rih {

// Prior guess for the shape of the density, given by its CDF on [0, 1].
// Interval weights a_j are a_total * (cdf(r) - cdf(l)).
struct ReferenceDensity {
  std::string name = "uniform";
  std::function<double(double)> cdf;  // nondecreasing, cdf(0)=0, cdf(1)=1

  static ReferenceDensity uniform();
};

// Prior on the number of bins, supported on {1, ..., k_n}.
struct KPrior {
  enum class Kind { uniform, power, poisson };
  Kind kind = Kind::uniform;
  double param = 0.0;  // exponent for power (p(k) ~ k^-m), rate for poisson

  static KPrior uniform() { return {}; }
  static KPrior power(double m);
  static KPrior poisson(double lambda);
  // "uniform" | "power:<m>" | "poisson:<lambda>"
  static KPrior from_string(const std::string& s);
  std::string to_string() const;
};

// Fully resolved prior for a mesh with k_n intervals. Immutable once built.
class PriorConfig {
 public:
  PriorConfig(double a_total, ReferenceDensity g0, KPrior k_prior, int k_n);

  double a_total() const { return a_total_; }
  int k_n() const { return k_n_; }
  const KPrior& k_prior() const { return k_prior_; }
  const ReferenceDensity& g0() const { return g0_; }

  double g0_cdf(double x) const { return g0_.cdf ? g0_.cdf(x) : x; }

  // log p(k), normalized over {1, ..., k_n}.
  double log_pk(int k) const;

 private:
  double a_total_;
  ReferenceDensity g0_;
  KPrior k_prior_;
  int k_n_;
  std::vector<double> log_pk_;
};

}  // namespace rih
