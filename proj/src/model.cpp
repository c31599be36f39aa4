#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <stdexcept>

#include "common.hpp"

namespace rih {

Partition Partition::single_bin(const GridMesh& mesh) {
  return Partition{{0, std::int32_t(mesh.num_cuts() - 1)}};
}

Partition Partition::full(const GridMesh& mesh) {
  Partition p;
  p.cut_indices.resize(mesh.num_cuts());
  for (std::size_t i = 0; i < mesh.num_cuts(); ++i) {
    p.cut_indices[i] = std::int32_t(i);
  }
  return p;
}

void Partition::validate(const GridMesh& mesh) const {
  if (cut_indices.size() < 2 || cut_indices.front() != 0 ||
      cut_indices.back() != std::int32_t(mesh.num_cuts() - 1)) {
    throw std::invalid_argument("partition must span the whole mesh");
  }
  for (std::size_t i = 1; i < cut_indices.size(); ++i) {
    if (cut_indices[i] <= cut_indices[i - 1]) {
      throw std::invalid_argument("partition indices must be strictly increasing");
    }
  }
}

double phi0(const GridMesh& mesh, const PriorConfig& prior, std::size_t i,
            std::size_t j) {
  const double width = mesh.cuts[j] - mesh.cuts[i];
  const double a_ij =
      prior.a_total() * (prior.g0_cdf(mesh.cuts[j]) - prior.g0_cdf(mesh.cuts[i]));
  if (!(a_ij > 0.0)) {
    throw NumericError("reference density puts zero mass on a mesh interval");
  }
  const double nij = double(mesh.count(i, j));
  return log_gamma(a_ij + nij) - log_gamma(a_ij) - nij * std::log(width);
}

double phi0_sum(const GridMesh& mesh, const PriorConfig& prior,
                const Partition& part) {
  double s = 0.0;
  for (std::size_t b = 1; b < part.cut_indices.size(); ++b) {
    s += phi0(mesh, prior, std::size_t(part.cut_indices[b - 1]),
              std::size_t(part.cut_indices[b]));
  }
  return s;
}

double log_psi(const PriorConfig& prior, int k, std::int64_t n) {
  return prior.log_pk(k) + log_gamma(prior.a_total()) -
         log_gamma(prior.a_total() + double(n)) -
         log_choose(prior.k_n() - 1, k - 1);
}

double log_posterior_unnorm(const GridMesh& mesh, const PriorConfig& prior,
                            const Partition& part) {
  return phi0_sum(mesh, prior, part) + log_psi(prior, part.k(), mesh.n);
}

std::vector<double> posterior_mean_theta(const GridMesh& mesh,
                                         const PriorConfig& prior,
                                         const Partition& part) {
  const double denom = prior.a_total() + double(mesh.n);
  std::vector<double> theta(std::size_t(part.k()));
  for (std::size_t b = 1; b < part.cut_indices.size(); ++b) {
    const std::size_t i = std::size_t(part.cut_indices[b - 1]);
    const std::size_t j = std::size_t(part.cut_indices[b]);
    const double a_ij = prior.a_total() *
                        (prior.g0_cdf(mesh.cuts[j]) - prior.g0_cdf(mesh.cuts[i]));
    theta[b - 1] = (a_ij + double(mesh.count(i, j))) / denom;
  }
  return theta;
}

HistogramEstimate::HistogramEstimate(std::vector<double> unit_breaks,
                                     std::vector<double> probs,
                                     SupportTransform transform)
    : unit_breaks_(std::move(unit_breaks)),
      probs_(std::move(probs)),
      transform_(transform) {
  if (unit_breaks_.size() != probs_.size() + 1 || probs_.empty()) {
    throw std::invalid_argument("breaks/probs size mismatch");
  }
}

double HistogramEstimate::operator()(double x) const {
  if (x < transform_.lo || x > transform_.hi) return 0.0;
  const double z = transform_.to_unit(x);
  // First bin is closed on the left; the rest are (left, right].
  auto it = std::lower_bound(unit_breaks_.begin() + 1, unit_breaks_.end(), z);
  if (it == unit_breaks_.end()) return 0.0;  // z > 1 cannot happen; safety
  const std::size_t bin = std::size_t(it - unit_breaks_.begin()) - 1;
  const double w = unit_breaks_[bin + 1] - unit_breaks_[bin];
  return probs_[bin] / (w * transform_.width());
}

std::vector<double> HistogramEstimate::breaks() const {
  std::vector<double> b(unit_breaks_.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i] = transform_.from_unit(unit_breaks_[i]);
  }
  b.front() = transform_.lo;
  b.back() = transform_.hi;
  return b;
}

std::vector<double> HistogramEstimate::heights() const {
  std::vector<double> h(probs_.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double w = (unit_breaks_[i + 1] - unit_breaks_[i]) * transform_.width();
    h[i] = probs_[i] / w;
  }
  return h;
}

std::string HistogramEstimate::to_json() const {
  nlohmann::json j;
  j["breaks"] = breaks();
  j["probs"] = probs_;
  j["density"] = heights();
  return j.dump();
}

HistogramEstimate make_estimate(const GridMesh& mesh, const PriorConfig& prior,
                                const Partition& part,
                                const SupportTransform& transform) {
  part.validate(mesh);
  std::vector<double> breaks(part.cut_indices.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    breaks[i] = mesh.cuts[std::size_t(part.cut_indices[i])];
  }
  return HistogramEstimate(std::move(breaks),
                           posterior_mean_theta(mesh, prior, part), transform);
}

ModelAverage::ModelAverage(const GridMesh& mesh, const PriorConfig& prior) {
  const std::size_t interior = mesh.num_intervals() - 1;
  if (mesh.num_intervals() > 20) {
    throw std::invalid_argument("model averaging is enumeration-based; mesh too large (> 20 bins)");
  }
  cuts_ = mesh.cuts;
  const std::size_t last = mesh.num_cuts() - 1;
  std::vector<double> log_weights;
  Partition part;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << interior); ++mask) {
    part.cut_indices.assign(1, 0);
    for (std::size_t b = 0; b < interior; ++b) {
      if (mask & (std::uint64_t(1) << b)) {
        part.cut_indices.push_back(std::int32_t(b + 1));
      }
    }
    part.cut_indices.push_back(std::int32_t(last));
    log_weights.push_back(log_posterior_unnorm(mesh, prior, part));
    parts_.push_back(part.cut_indices);
    thetas_.push_back(posterior_mean_theta(mesh, prior, part));
  }
  const double mx = *std::max_element(log_weights.begin(), log_weights.end());
  double sum = 0.0;
  for (double lw : log_weights) sum += std::exp(lw - mx);
  weights_.resize(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    weights_[i] = std::exp(log_weights[i] - mx) / sum;
  }
}

double ModelAverage::operator()(double z) const {
  if (z < 0.0 || z > 1.0) return 0.0;
  double f = 0.0;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    const auto& idx = parts_[p];
    // First bin closed on the left, the rest (left, right].
    std::size_t bin = 0;
    for (std::size_t b = 1; b + 1 < idx.size(); ++b) {
      if (z > cuts_[std::size_t(idx[b])]) bin = b;
    }
    const double w =
        cuts_[std::size_t(idx[bin + 1])] - cuts_[std::size_t(idx[bin])];
    f += weights_[p] * thetas_[p][bin] / w;
  }
  return f;
}

double model_average_density(const GridMesh& mesh, const PriorConfig& prior,
                             double z) {
  return ModelAverage(mesh, prior)(z);
}

}  // namespace rih
