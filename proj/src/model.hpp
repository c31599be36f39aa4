#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grid.hpp"
#include "prior.hpp"

namespace rih {

// A subset of mesh cuts delimiting k bins. Indices are positions in
// mesh.cuts; the first is always 0 and the last is always the final cut.
struct Partition {
  std::vector<std::int32_t> cut_indices;

  int k() const { return int(cut_indices.size()) - 1; }

  static Partition single_bin(const GridMesh& mesh);
  static Partition full(const GridMesh& mesh);

  // Throws std::invalid_argument unless indices are strictly increasing,
  // start at 0, and end at the last mesh cut.
  void validate(const GridMesh& mesh) const;
};

// Marginal log score of the single interval (cuts[i], cuts[j]]:
//   lgamma(a_ij + N_ij) - lgamma(a_ij) - N_ij * log(width)
// with a_ij = a_total * (G0(cuts[j]) - G0(cuts[i])).
double phi0(const GridMesh& mesh, const PriorConfig& prior, std::size_t i,
            std::size_t j);

// Sum of phi0 over the bins of a partition.
double phi0_sum(const GridMesh& mesh, const PriorConfig& prior,
                const Partition& part);

// Bin-count part of the log posterior:
//   log p(k) + lgamma(a) - lgamma(a + n) - log C(k_n - 1, k - 1).
double log_psi(const PriorConfig& prior, int k, std::int64_t n);

// Unnormalized log posterior of a partition: phi0_sum + log_psi. For the
// single-bin partition the phi terms telescope and this equals log p(1).
double log_posterior_unnorm(const GridMesh& mesh, const PriorConfig& prior,
                            const Partition& part);

// Posterior mean bin probabilities: (a_j + N_j) / (a_total + n).
std::vector<double> posterior_mean_theta(const GridMesh& mesh,
                                         const PriorConfig& prior,
                                         const Partition& part);

// Piecewise-constant density on the original data scale.
class HistogramEstimate {
 public:
  HistogramEstimate(std::vector<double> unit_breaks, std::vector<double> probs,
                    SupportTransform transform);

  // Density at x; zero outside [transform.lo, transform.hi].
  double operator()(double x) const;

  int k() const { return int(probs_.size()); }
  const std::vector<double>& unit_breaks() const { return unit_breaks_; }
  const std::vector<double>& probs() const { return probs_; }
  const SupportTransform& transform() const { return transform_; }

  std::vector<double> breaks() const;   // original scale, endpoints exact
  std::vector<double> heights() const;  // density value per bin

  // {"breaks": [...], "probs": [...], "density": [...]}
  std::string to_json() const;

 private:
  std::vector<double> unit_breaks_;
  std::vector<double> probs_;
  SupportTransform transform_;
};

HistogramEstimate make_estimate(const GridMesh& mesh, const PriorConfig& prior,
                                const Partition& part,
                                const SupportTransform& transform);

// Posterior-weighted mixture over every partition of the mesh, evaluated on
// the unit scale. Exact enumeration; refuses meshes with more than 20 bins.
class ModelAverage {
 public:
  ModelAverage(const GridMesh& mesh, const PriorConfig& prior);
  double operator()(double z) const;

 private:
  std::vector<double> cuts_;
  std::vector<double> weights_;              // posterior weight per partition
  std::vector<std::vector<std::int32_t>> parts_;
  std::vector<std::vector<double>> thetas_;
};

double model_average_density(const GridMesh& mesh, const PriorConfig& prior,
                             double z);

}  // namespace rih
