#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "prior.hpp"

namespace rih {

enum class SearchMethod { dp_exact, greedy_then_dp, brute_force };

std::string to_string(SearchMethod m);

struct SearchStats {
  std::int64_t candidates_examined = 0;  // single-interval score evaluations
  double wall_ms = 0.0;
};

struct SearchResult {
  Partition partition;
  double score = 0.0;  // unnormalized log posterior at the optimum
  SearchMethod method = SearchMethod::dp_exact;
  SearchStats stats;

  std::string to_json() const;
};

// Exact MAP partition by dynamic programming over (cut, bin count).
// Ties break toward fewer bins, then smaller predecessor cuts.
SearchResult dp_map(const GridMesh& mesh, const PriorConfig& prior, int k_max);

// Keeps q_target interior cuts by greedy forward selection on the marginal
// score gain of each single split. Returns the reduced mesh; the prior (and
// its k_n) is unchanged, only the search space shrinks. When selected_out is
// given it receives the chosen cut indices of the input mesh.
GridMesh greedy_reduce(const GridMesh& mesh, const PriorConfig& prior,
                       int q_target,
                       std::vector<std::int32_t>* selected_out = nullptr);

// Exhaustive enumeration over all partitions; oracle for small meshes
// (refuses more than 20 bins).
SearchResult brute_force_map(const GridMesh& mesh, const PriorConfig& prior);

struct FitConfig {
  MeshKind grid = MeshKind::quantile;
  double a_total = 5.0;
  KPrior k_prior = KPrior::uniform();
  ReferenceDensity g0 = ReferenceDensity::uniform();
  std::optional<double> support_lo;
  std::optional<double> support_hi;
  bool exact = false;            // force full-mesh DP regardless of size
  std::optional<int> k_max;      // cap on bins (default: mesh interval count)
  int exact_threshold = 600;     // mesh cut count beyond which greedy kicks in
  std::optional<int> q_target;   // greedy budget (default: ceil(sqrt(n)))
  std::optional<int> k_n;        // mesh budget override (default: default_kn)
};

struct FitResult {
  HistogramEstimate estimate;
  SearchResult search;
  GridMesh mesh;  // the mesh the search ran on
  SupportTransform transform;
  int effective_kn = 0;  // interval count of the full mesh after dedup
};

FitResult fit(std::span<const double> data, const FitConfig& cfg = {});

std::string fit_to_json(const FitResult& r);

}  // namespace rih
