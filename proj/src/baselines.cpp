#include "baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "common.hpp"

namespace rih {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

RegularBayesFit fit_regular_bayes(std::span<const double> data,
                                  const RegularBayesConfig& cfg) {
  const SupportTransform t =
      resolve_support(data, cfg.support_lo, cfg.support_hi);
  std::vector<double> z = rescale(data, t);
  std::sort(z.begin(), z.end());
  const std::int64_t n = std::int64_t(z.size());
  const int k_cap = cfg.k_cap ? *cfg.k_cap : default_kn(n);
  if (k_cap < 1) throw std::invalid_argument("k_cap must be at least 1");

  PriorConfig prior(cfg.a_total, cfg.g0, cfg.k_prior, k_cap);
  const double a = prior.a_total();
  const double norm = log_gamma(a) - log_gamma(a + double(n));

  const auto count_leq = [&](double x) {
    return std::int64_t(std::upper_bound(z.begin(), z.end(), x) - z.begin());
  };

  int best_k = 1;
  double best = kNegInf;
  for (int k = 1; k <= k_cap; ++k) {
    double crit = prior.log_pk(k) + norm + double(n) * std::log(double(k));
    std::int64_t below = 0;
    double g_left = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double cut = double(j) / double(k);
      const std::int64_t upto = j == k ? n : count_leq(cut);
      const double g_right = j == k ? 1.0 : prior.g0_cdf(cut);
      const double a_j = a * (g_right - g_left);
      if (!(a_j > 0.0)) throw NumericError("reference density puts zero mass on a bin");
      crit += log_gamma(a_j + double(upto - below)) - log_gamma(a_j);
      below = upto;
      g_left = g_right;
    }
    if (crit > best) {
      best = crit;
      best_k = k;
    }
  }

  const int k = best_k;
  std::vector<double> breaks(std::size_t(k) + 1);
  for (int j = 0; j <= k; ++j) breaks[std::size_t(j)] = double(j) / double(k);
  std::vector<double> theta(std::size_t(k), 0.0);
  std::int64_t below = 0;
  double g_left = 0.0;
  for (int j = 1; j <= k; ++j) {
    const std::int64_t upto = j == k ? n : count_leq(breaks[std::size_t(j)]);
    const double g_right = j == k ? 1.0 : prior.g0_cdf(breaks[std::size_t(j)]);
    theta[std::size_t(j - 1)] =
        (a * (g_right - g_left) + double(upto - below)) / (a + double(n));
    below = upto;
    g_left = g_right;
  }
  return RegularBayesFit{HistogramEstimate(std::move(breaks), std::move(theta), t),
                         k, best};
}

double klcv_min_width(std::int64_t n) {
  const double l = std::log(double(n));
  return std::pow(l, 1.5) / double(n);
}

double klcv_interval_score(const GridMesh& mesh, std::size_t i, std::size_t j,
                           double min_width) {
  const std::int64_t nij = mesh.count(i, j);
  const double width = mesh.cuts[j] - mesh.cuts[i];
  if (nij < 2 || !(width > min_width)) return kNegInf;
  return double(nij) * std::log(double(nij) - 1.0) -
         double(nij) * std::log(width);
}

KlcvFit fit_klcv(std::span<const double> data, const KlcvConfig& cfg) {
  const SupportTransform t =
      resolve_support(data, cfg.support_lo, cfg.support_hi);
  const std::vector<double> z = rescale(data, t);
  const std::int64_t n = std::int64_t(z.size());
  const int k_n = cfg.k_n ? *cfg.k_n : default_kn(n);
  GridMesh mesh = build_mesh(z, cfg.grid, k_n);
  const double minw = klcv_min_width(n);

  const std::size_t C = mesh.num_cuts();
  std::vector<double> best(C, kNegInf);
  std::vector<std::int32_t> prev(C, -1);
  best[0] = 0.0;
  for (std::size_t j = 1; j < C; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] == kNegInf) continue;
      const double w = klcv_interval_score(mesh, i, j, minw);
      if (w == kNegInf) continue;
      if (best[i] + w > best[j]) {
        best[j] = best[i] + w;
        prev[j] = std::int32_t(i);
      }
    }
  }
  if (best[C - 1] == kNegInf) {
    throw NumericError("no feasible partition for the cross-validation criterion");
  }

  Partition part;
  for (std::int32_t j = std::int32_t(C - 1); j > 0; j = prev[std::size_t(j)]) {
    part.cut_indices.push_back(j);
  }
  part.cut_indices.push_back(0);
  std::reverse(part.cut_indices.begin(), part.cut_indices.end());

  std::vector<double> breaks(part.cut_indices.size());
  std::vector<double> theta(part.cut_indices.size() - 1);
  for (std::size_t b = 0; b < part.cut_indices.size(); ++b) {
    breaks[b] = mesh.cuts[std::size_t(part.cut_indices[b])];
  }
  for (std::size_t b = 1; b < part.cut_indices.size(); ++b) {
    theta[b - 1] = double(mesh.count(std::size_t(part.cut_indices[b - 1]),
                                     std::size_t(part.cut_indices[b]))) /
                   double(n);
  }
  const double score = best[C - 1];
  return KlcvFit{HistogramEstimate(std::move(breaks), std::move(theta), t),
                 std::move(part), std::move(mesh), t, score};
}

}  // namespace rih
