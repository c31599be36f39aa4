#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "common.hpp"

namespace rih {

SupportTransform estimate_support(std::span<const double> data) {
  return resolve_support(data, std::nullopt, std::nullopt);
}

SupportTransform resolve_support(std::span<const double> data,
                                 std::optional<double> lo,
                                 std::optional<double> hi) {
  if (data.size() < 2) throw DataError("need at least two observations");
  double mn = data[0], mx = data[0];
  for (double x : data) {
    if (!std::isfinite(x)) throw DataError("non-finite observation");
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  SupportTransform t{lo.value_or(mn), hi.value_or(mx)};
  if (!(std::isfinite(t.lo) && std::isfinite(t.hi)) || !(t.lo < t.hi)) {
    if (lo && hi) throw std::invalid_argument("support bounds must satisfy lo < hi");
    throw DataError("degenerate support: sample range is empty");
  }
  if (mn < t.lo || mx > t.hi) throw DataError("observations outside the declared support");
  return t;
}

std::vector<double> rescale(std::span<const double> data,
                            const SupportTransform& t) {
  std::vector<double> z(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) z[i] = t.to_unit(data[i]);
  return z;
}

MeshKind mesh_kind_from_string(const std::string& s) {
  if (s == "regular") return MeshKind::regular;
  if (s == "quantile") return MeshKind::quantile;
  if (s == "orderstat" || s == "order_statistic") return MeshKind::order_statistic;
  throw std::invalid_argument("unknown grid kind: " + s);
}

std::string to_string(MeshKind k) {
  switch (k) {
    case MeshKind::regular: return "regular";
    case MeshKind::quantile: return "quantile";
    case MeshKind::order_statistic: return "orderstat";
  }
  return "?";
}

int default_kn(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("mesh budget needs n >= 2");
  double l = std::log(double(n));
  return std::max<int>(1, int(std::ceil(4.0 * double(n) / (l * l))));
}

std::string GridMesh::to_json() const {
  nlohmann::json j;
  j["cuts"] = cuts;
  j["prefix_counts"] = prefix_counts;
  j["n"] = n;
  return j.dump();
}

namespace {

// Interior cut candidates per mesh kind, possibly with duplicates or values
// coinciding with the endpoints; cleanup happens in build_mesh.
std::vector<double> interior_cuts(const std::vector<double>& zs, MeshKind kind,
                                  int k_n) {
  const std::int64_t n = std::int64_t(zs.size());
  std::vector<double> cuts;
  switch (kind) {
    case MeshKind::regular:
      cuts.reserve(std::size_t(k_n));
      for (int j = 1; j < k_n; ++j) cuts.push_back(double(j) / double(k_n));
      break;
    case MeshKind::quantile:
      // Left-continuous empirical quantile: Q(q) = z_(ceil(q n)).
      cuts.reserve(std::size_t(k_n));
      for (int j = 1; j < k_n; ++j) {
        std::int64_t r = (std::int64_t(j) * n + k_n - 1) / k_n;  // ceil(jn/k_n)
        r = std::clamp<std::int64_t>(r, 1, n);
        cuts.push_back(zs[std::size_t(r - 1)]);
      }
      break;
    case MeshKind::order_statistic: {
      std::vector<double> distinct;
      distinct.reserve(zs.size());
      for (double z : zs) {
        if (distinct.empty() || z != distinct.back()) distinct.push_back(z);
      }
      std::vector<double> mids;
      mids.reserve(distinct.size());
      for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        mids.push_back(0.5 * (distinct[i] + distinct[i + 1]));
      }
      if (std::int64_t(mids.size()) <= std::int64_t(k_n)) return mids;
      // Deterministic even-index subsample down to k_n cuts.
      cuts.reserve(std::size_t(k_n));
      for (int i = 0; i < k_n; ++i) {
        std::size_t idx =
            std::size_t((double(i) + 0.5) * double(mids.size()) / double(k_n));
        idx = std::min(idx, mids.size() - 1);
        cuts.push_back(mids[idx]);
      }
      break;
    }
  }
  return cuts;
}

}  // namespace

GridMesh build_mesh(std::vector<double> z, MeshKind kind, int k_n) {
  if (k_n < 1) throw std::invalid_argument("mesh budget must be positive");
  if (z.empty()) throw DataError("empty sample");
  for (double v : z) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("rescaled value outside [0, 1]");
  }
  std::sort(z.begin(), z.end());

  std::vector<double> cuts = interior_cuts(z, kind, k_n);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  // Endpoints are pinned to exactly 0 and 1; interior duplicates of them drop.
  while (!cuts.empty() && cuts.front() <= 0.0) cuts.erase(cuts.begin());
  while (!cuts.empty() && cuts.back() >= 1.0) cuts.pop_back();
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(1.0);

  GridMesh mesh;
  mesh.n = std::int64_t(z.size());
  mesh.cuts = std::move(cuts);
  mesh.prefix_counts.resize(mesh.cuts.size());
  for (std::size_t i = 0; i < mesh.cuts.size(); ++i) {
    mesh.prefix_counts[i] =
        std::upper_bound(z.begin(), z.end(), mesh.cuts[i]) - z.begin();
  }
  return mesh;
}

}  // namespace rih
