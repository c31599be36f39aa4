#include "search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "common.hpp"

namespace rih {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::dp_exact: return "dp_exact";
    case SearchMethod::greedy_then_dp: return "greedy_then_dp";
    case SearchMethod::brute_force: return "brute_force";
  }
  return "?";
}

std::string SearchResult::to_json() const {
  nlohmann::json j;
  j["cut_indices"] = partition.cut_indices;
  j["k"] = partition.k();
  j["score"] = score;
  j["method"] = to_string(method);
  j["stats"] = {{"candidates_examined", stats.candidates_examined},
                {"wall_ms", stats.wall_ms}};
  return j.dump();
}

SearchResult dp_map(const GridMesh& mesh, const PriorConfig& prior,
                    int k_max) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t C = mesh.num_cuts();
  const int K = int(mesh.num_intervals());
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  k_max = std::min(k_max, std::min(K, prior.k_n()));

  // best[j * k_max + (m-1)] = max phi-sum over partitions of [cut 0, cut j]
  // into m bins. Each phi0(i, j) is evaluated exactly once.
  std::vector<double> best(C * std::size_t(k_max), kNegInf);
  std::vector<std::int32_t> prev(C * std::size_t(k_max), -1);
  std::int64_t evals = 0;

  for (std::size_t j = 1; j < C; ++j) {
    double* bj = best.data() + j * std::size_t(k_max);
    std::int32_t* pj = prev.data() + j * std::size_t(k_max);
    for (std::size_t i = 0; i < j; ++i) {
      const double phi = phi0(mesh, prior, i, j);
      ++evals;
      if (i == 0) {
        if (phi > bj[0]) {
          bj[0] = phi;
          pj[0] = 0;
        }
        continue;
      }
      const double* bi = best.data() + i * std::size_t(k_max);
      // m bins ending at j need m-1 bins over the first i cuts, so m-1 <= i.
      const int m_hi = int(std::min<std::size_t>(std::size_t(k_max), i + 1));
      for (int m = 2; m <= m_hi; ++m) {
        const double base = bi[m - 2];
        if (base == kNegInf) continue;
        const double cand = base + phi;
        if (cand > bj[m - 1]) {
          bj[m - 1] = cand;
          pj[m - 1] = std::int32_t(i);
        }
      }
    }
  }

  // Add the bin-count term and pick k; ties go to fewer bins.
  const double* blast = best.data() + (C - 1) * std::size_t(k_max);
  int k_star = 1;
  double score = kNegInf;
  for (int m = 1; m <= k_max; ++m) {
    if (blast[m - 1] == kNegInf) continue;
    const double total = blast[m - 1] + log_psi(prior, m, mesh.n);
    if (total > score) {
      score = total;
      k_star = m;
    }
  }
  if (score == kNegInf) throw NumericError("no feasible partition");

  SearchResult res;
  res.method = SearchMethod::dp_exact;
  res.score = score;
  res.stats.candidates_examined = evals;
  std::vector<std::int32_t>& idx = res.partition.cut_indices;
  idx.push_back(std::int32_t(C - 1));
  std::size_t j = C - 1;
  for (int m = k_star; m >= 1; --m) {
    const std::int32_t i = prev[j * std::size_t(k_max) + std::size_t(m - 1)];
    idx.push_back(i);
    j = std::size_t(i);
  }
  std::reverse(idx.begin(), idx.end());
  res.stats.wall_ms = elapsed_ms(t0);
  return res;
}

GridMesh greedy_reduce(const GridMesh& mesh, const PriorConfig& prior,
                       int q_target,
                       std::vector<std::int32_t>* selected_out) {
  const std::size_t C = mesh.num_cuts();
  const std::size_t last = C - 1;
  q_target = std::max(q_target, 0);

  std::set<std::int32_t> selected{0, std::int32_t(last)};

  if (std::size_t(q_target) >= C - 2) {
    // Nothing to thin out.
    for (std::size_t c = 1; c < last; ++c) selected.insert(std::int32_t(c));
  } else {
    struct Entry {
      double gain;
      std::int32_t cand, left, right;
    };
    auto worse = [](const Entry& a, const Entry& b) {
      if (a.gain != b.gain) return a.gain < b.gain;
      return a.cand > b.cand;  // equal gains: prefer the smaller cut index
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    auto gain_of = [&](std::int32_t c, std::int32_t l, std::int32_t r) {
      return phi0(mesh, prior, std::size_t(l), std::size_t(c)) +
             phi0(mesh, prior, std::size_t(c), std::size_t(r)) -
             phi0(mesh, prior, std::size_t(l), std::size_t(r));
    };
    for (std::int32_t c = 1; c < std::int32_t(last); ++c) {
      heap.push({gain_of(c, 0, std::int32_t(last)), c, 0, std::int32_t(last)});
    }
    int chosen = 0;
    while (chosen < q_target && !heap.empty()) {
      Entry e = heap.top();
      heap.pop();
      auto it = selected.upper_bound(e.cand);
      const std::int32_t right = *it;
      const std::int32_t left = *std::prev(it);
      if (left != e.left || right != e.right) {
        // Stale: the candidate's interval was split since this entry queued.
        heap.push({gain_of(e.cand, left, right), e.cand, left, right});
        continue;
      }
      selected.insert(e.cand);
      ++chosen;
    }
  }

  std::vector<std::int32_t> idx(selected.begin(), selected.end());
  if (selected_out) *selected_out = idx;
  GridMesh sub;
  sub.n = mesh.n;
  sub.cuts.reserve(idx.size());
  sub.prefix_counts.reserve(idx.size());
  for (std::int32_t i : idx) {
    sub.cuts.push_back(mesh.cuts[std::size_t(i)]);
    sub.prefix_counts.push_back(mesh.prefix_counts[std::size_t(i)]);
  }
  return sub;
}

SearchResult brute_force_map(const GridMesh& mesh, const PriorConfig& prior) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t C = mesh.num_cuts();
  if (mesh.num_intervals() > 20) {
    throw std::invalid_argument("exhaustive search refuses meshes with more than 20 bins");
  }
  const std::size_t interior = C - 2;

  // Interval scores up front; the mask loop then only adds.
  std::vector<double> phi(C * C, 0.0);
  std::int64_t evals = 0;
  for (std::size_t i = 0; i + 1 < C; ++i) {
    for (std::size_t j = i + 1; j < C; ++j) {
      phi[i * C + j] = phi0(mesh, prior, i, j);
      ++evals;
    }
  }

  double best_score = kNegInf;
  std::vector<std::int32_t> best_idx;
  std::vector<std::int32_t> idx;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << interior); ++mask) {
    idx.assign(1, 0);
    for (std::size_t b = 0; b < interior; ++b) {
      if (mask & (std::uint64_t(1) << b)) idx.push_back(std::int32_t(b + 1));
    }
    idx.push_back(std::int32_t(C - 1));
    double s = 0.0;
    for (std::size_t b = 1; b < idx.size(); ++b) {
      s += phi[std::size_t(idx[b - 1]) * C + std::size_t(idx[b])];
    }
    s += log_psi(prior, int(idx.size()) - 1, mesh.n);
    const bool better =
        s > best_score ||
        (s == best_score && !best_idx.empty() &&
         (idx.size() < best_idx.size() ||
          (idx.size() == best_idx.size() && idx < best_idx)));
    if (better) {
      best_score = s;
      best_idx = idx;
    }
  }

  SearchResult res;
  res.method = SearchMethod::brute_force;
  res.score = best_score;
  res.partition.cut_indices = std::move(best_idx);
  res.stats.candidates_examined = evals;
  res.stats.wall_ms = elapsed_ms(t0);
  return res;
}

FitResult fit(std::span<const double> data, const FitConfig& cfg) {
  const SupportTransform t =
      resolve_support(data, cfg.support_lo, cfg.support_hi);
  const std::vector<double> z = rescale(data, t);
  const std::int64_t n = std::int64_t(data.size());

  const int k_n = cfg.k_n ? *cfg.k_n : default_kn(n);
  if (k_n < 1) throw std::invalid_argument("mesh budget must be positive");
  GridMesh mesh = build_mesh(z, cfg.grid, k_n);
  const int K = int(mesh.num_intervals());

  PriorConfig prior(cfg.a_total, cfg.g0, cfg.k_prior, K);
  const int k_max = cfg.k_max ? std::clamp(*cfg.k_max, 1, K) : K;

  FitResult out{
      HistogramEstimate({0.0, 1.0}, {1.0}, t), SearchResult{}, GridMesh{}, t, K};

  if (cfg.exact || int(mesh.num_cuts()) <= cfg.exact_threshold) {
    out.search = dp_map(mesh, prior, k_max);
    out.mesh = std::move(mesh);
  } else {
    const int q = cfg.q_target
                      ? *cfg.q_target
                      : int(std::ceil(std::sqrt(double(n))));
    const auto t0 = std::chrono::steady_clock::now();
    GridMesh sub = greedy_reduce(mesh, prior, q);
    out.search = dp_map(sub, prior, std::min(k_max, int(sub.num_intervals())));
    out.search.method = SearchMethod::greedy_then_dp;
    out.search.stats.wall_ms = elapsed_ms(t0);
    out.mesh = std::move(sub);
  }
  out.estimate = make_estimate(out.mesh, prior, out.search.partition, t);
  return out;
}

std::string fit_to_json(const FitResult& r) {
  nlohmann::json j = nlohmann::json::parse(r.estimate.to_json());
  j["k"] = r.estimate.k();
  j["score"] = r.search.score;
  j["method"] = to_string(r.search.method);
  j["support"] = {r.transform.lo, r.transform.hi};
  j["effective_kn"] = r.effective_kn;
  j["f_at_hi"] = r.estimate(r.transform.hi);
  j["stats"] = {{"candidates_examined", r.search.stats.candidates_examined},
                {"wall_ms", r.search.stats.wall_ms}};
  return j.dump(2);
}

}  // namespace rih
