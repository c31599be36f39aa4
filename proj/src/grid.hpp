#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rih {

// Affine map between the data scale [lo, hi] and the unit interval.
struct SupportTransform {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double to_unit(double x) const { return (x - lo) / (hi - lo); }
  double from_unit(double z) const { return lo + z * (hi - lo); }
};

// Sample range as support; requires n >= 2 and min < max.
SupportTransform estimate_support(std::span<const double> data);

// Support with optional fixed endpoints; missing sides come from the sample.
// All data must lie inside the resolved interval.
SupportTransform resolve_support(std::span<const double> data,
                                 std::optional<double> lo,
                                 std::optional<double> hi);

// Maps data into [0, 1] under the transform.
std::vector<double> rescale(std::span<const double> data,
                            const SupportTransform& t);

enum class MeshKind { regular, quantile, order_statistic };

MeshKind mesh_kind_from_string(const std::string& s);
std::string to_string(MeshKind k);

// Candidate cut points on [0, 1] plus cumulative data counts.
//
// Interval convention: I_1 = [cuts[0], cuts[1]] is closed on both ends and
// I_j = (cuts[j-1], cuts[j]] for j >= 2, so [0, 1] is partitioned exactly.
// prefix_counts[i] = #{z : z <= cuts[i]}; points at 0 are carried by
// prefix_counts[0] and belong to the first interval.
struct GridMesh {
  std::vector<double> cuts;                 // strictly increasing, 0 .. 1
  std::vector<std::int64_t> prefix_counts;  // same length as cuts
  std::int64_t n = 0;

  std::size_t num_cuts() const { return cuts.size(); }
  std::size_t num_intervals() const { return cuts.size() - 1; }

  // Data count of (cuts[i], cuts[j]], with the closed-left adjustment at
  // i == 0. Requires i < j.
  std::int64_t count(std::size_t i, std::size_t j) const {
    return prefix_counts[j] - (i == 0 ? 0 : prefix_counts[i]);
  }

  std::string to_json() const;
};

// Default mesh budget: ceil(4n / ln(n)^2), at least 1.
int default_kn(std::int64_t n);

// Builds the candidate mesh from unit-scale data. Duplicate cuts collapse, so
// the effective interval count can be smaller than k_n.
GridMesh build_mesh(std::vector<double> z, MeshKind kind, int k_n);

}  // namespace rih
