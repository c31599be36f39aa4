#pragma once

#include <optional>
#include <span>

#include "grid.hpp"
#include "model.hpp"
#include "prior.hpp"

namespace rih {

// Same Bayesian model restricted to equispaced partitions: one candidate per
// bin count k, scored by marginal likelihood plus the k-prior (no partition
// multiplicity term, since each k admits a single regular partition).
struct RegularBayesConfig {
  double a_total = 5.0;
  KPrior k_prior = KPrior::uniform();
  ReferenceDensity g0 = ReferenceDensity::uniform();
  std::optional<double> support_lo;
  std::optional<double> support_hi;
  std::optional<int> k_cap;  // default: default_kn(n)
};

struct RegularBayesFit {
  HistogramEstimate estimate;
  int k = 1;
  double criterion = 0.0;
};

RegularBayesFit fit_regular_bayes(std::span<const double> data,
                                  const RegularBayesConfig& cfg = {});

// Kullback-Leibler cross-validation over an irregular candidate mesh:
// maximize sum N_j log(N_j - 1) - N_j log|I_j| subject to every bin holding
// at least two points and exceeding the minimum width.
struct KlcvConfig {
  MeshKind grid = MeshKind::quantile;
  std::optional<double> support_lo;
  std::optional<double> support_hi;
  std::optional<int> k_n;  // mesh budget override
};

struct KlcvFit {
  HistogramEstimate estimate;
  Partition partition;
  GridMesh mesh;
  SupportTransform transform;
  double cv_score = 0.0;
};

KlcvFit fit_klcv(std::span<const double> data, const KlcvConfig& cfg = {});

// Per-interval CV score, -infinity when a constraint fails; exposed so tests
// can brute-force the same objective.
double klcv_interval_score(const GridMesh& mesh, std::size_t i, std::size_t j,
                           double min_width);
double klcv_min_width(std::int64_t n);

}  // namespace rih
