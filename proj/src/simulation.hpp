#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "baselines.hpp"
#include "densities.hpp"
#include "losses.hpp"
#include "search.hpp"

namespace rih {

// One fitting procedure under test, addressable by name in reports.
struct MethodSpec {
  enum class Kind { rih, regular_bayes, klcv };

  std::string name = "rih";
  Kind kind = Kind::rih;
  double a_total = 5.0;
  KPrior k_prior = KPrior::uniform();
  MeshKind grid = MeshKind::quantile;
  bool known_support = false;  // pin the density's declared endpoints
  bool exact = false;
  std::optional<int> k_cap;
};

// Fits data with the given method; k_out receives the chosen bin count.
HistogramEstimate run_method(const MethodSpec& method,
                             std::span<const double> data,
                             const TestDensity& f0, int* k_out = nullptr);

struct RiskEntry {
  std::string density;
  std::int64_t n = 0;
  std::string method;
  std::string loss;
  double risk = 0.0;
  double std_error = 0.0;
  int replications = 0;
  std::uint64_t seed = 0;
  double mean_k = 0.0;
};

struct RiskReport {
  std::vector<RiskEntry> entries;

  // density,n,method,loss,risk,stderr,B,seed,mean_k
  std::string to_csv() const;
  // Merges external rows; needs at least method,density,n,loss,risk columns.
  void import_csv(std::istream& in);
  // {"series":[{"label":...,"x":[...],"y":[...]}]}, one series per
  // (density, loss, method), x = n.
  std::string to_plot_json() const;
};

// Monte Carlo risk: B seeded replications of sample -> fit -> loss. Each
// replication's seed is derived from (seed, density, n, method, b), so the
// result is bit-identical for any worker count. A failing replication aborts.
RiskEntry estimate_risk(const TestDensity& f0, std::int64_t n,
                        const MethodSpec& method, LossKind loss, int B,
                        std::uint64_t seed, int workers = 1);

// log(risk / reference risk) rows per (density, n, loss) cell.
struct RelativeRiskRow {
  std::string density;
  std::int64_t n = 0;
  std::string loss;
  std::string method;
  double log_rel = 0.0;
};
std::vector<RelativeRiskRow> relative_to(const RiskReport& report,
                                         const std::string& reference_method);

// Risk under different bin-count priors (uniform, power 1, power 2,
// poisson 1), Hellinger loss, known supports. Appends derived rows with loss
// "hellinger_log_rel_vs_uniform".
RiskReport sensitivity_k_prior(const std::vector<std::string>& density_ids,
                               const std::vector<std::int64_t>& ns, int B,
                               std::uint64_t seed, int workers);

// Risk and mean MAP bin count across concentrations a; derived rows use loss
// "hellinger_log_rel_vs_a_1".
RiskReport sensitivity_concentration(const std::vector<double>& a_values,
                                     const std::vector<std::string>& density_ids,
                                     const std::vector<std::int64_t>& ns, int B,
                                     std::uint64_t seed, int workers);

// Two-groups p-value experiment: fit on known [0, 1], estimate the null
// weight as the fitted density at 1, report RMSE over B replications.
struct Pi0Entry {
  double pi0 = 0.0;
  double beta = 0.0;
  std::int64_t n = 0;
  std::string method;
  double rmse = 0.0;
  int replications = 0;
  std::uint64_t seed = 0;
};
std::vector<Pi0Entry> pi0_experiment(const std::vector<double>& pi0s,
                                     double beta,
                                     const std::vector<std::int64_t>& ns, int B,
                                     std::uint64_t seed, int workers,
                                     const std::vector<MethodSpec>& methods = {});
std::string pi0_to_csv(const std::vector<Pi0Entry>& entries);

// Log-relative-risk and rank summaries over a report.
struct SummaryRow {
  std::string density;
  std::int64_t n = 0;
  std::string loss;
  std::string method;
  double risk = 0.0;
  double lrr = 0.0;   // log risk minus log of the cell's best risk
  double rank = 0.0;  // 1 = best; ties get the midrank
};
struct Summary {
  std::vector<SummaryRow> rows;
  struct MedianRank {
    std::string method;
    std::string loss;
    double median_rank = 0.0;
  };
  std::vector<MedianRank> median_ranks;
  std::string to_csv() const;
};
Summary summarize(const RiskReport& report);

// Campaign configuration (JSON). Unknown or missing keys raise
// std::invalid_argument naming the offenders.
struct CampaignConfig {
  enum class Experiment { risk, sensitivity_k, sensitivity_a, pi0 };
  Experiment experiment = Experiment::risk;
  std::vector<std::string> densities;
  std::vector<std::int64_t> ns;
  std::vector<MethodSpec> methods;
  std::vector<LossKind> losses;
  int B = 0;
  std::uint64_t seed = 0;
  std::vector<double> a_values;
  std::vector<double> pi0s;
  double beta = 10.0;
  std::string import_csv_path;
};

CampaignConfig parse_campaign(const std::string& json_text);

struct CampaignOutput {
  std::string csv;
  std::string plot_json;
  std::string summary_csv;  // empty for the pi0 experiment
};
CampaignOutput run_campaign(const CampaignConfig& cfg, int workers = 1);

}  // namespace rih
