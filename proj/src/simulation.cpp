#include "simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "common.hpp"
#include "rng.hpp"

namespace rih {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(0..count-1) on the given number of workers; the first exception
// aborts the remaining work and is rethrown after the pool drains.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  workers = std::clamp(workers, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr eptr;
  std::mutex mu;
  auto body = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!eptr) eptr = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (eptr) std::rethrow_exception(eptr);
}

std::optional<double> known_lo(const TestDensity& f0) {
  if (std::isnan(f0.fit_lo)) return std::nullopt;
  return f0.fit_lo;
}
std::optional<double> known_hi(const TestDensity& f0) {
  if (std::isnan(f0.fit_hi)) return std::nullopt;
  return f0.fit_hi;
}

}  // namespace

HistogramEstimate run_method(const MethodSpec& method,
                             std::span<const double> data,
                             const TestDensity& f0, int* k_out) {
  const std::optional<double> lo =
      method.known_support ? known_lo(f0) : std::nullopt;
  const std::optional<double> hi =
      method.known_support ? known_hi(f0) : std::nullopt;
  switch (method.kind) {
    case MethodSpec::Kind::rih: {
      FitConfig cfg;
      cfg.grid = method.grid;
      cfg.a_total = method.a_total;
      cfg.k_prior = method.k_prior;
      cfg.support_lo = lo;
      cfg.support_hi = hi;
      cfg.exact = method.exact;
      cfg.k_max = method.k_cap;
      FitResult r = fit(data, cfg);
      if (k_out) *k_out = r.estimate.k();
      return std::move(r.estimate);
    }
    case MethodSpec::Kind::regular_bayes: {
      RegularBayesConfig cfg;
      cfg.a_total = method.a_total;
      cfg.k_prior = method.k_prior;
      cfg.support_lo = lo;
      cfg.support_hi = hi;
      cfg.k_cap = method.k_cap;
      RegularBayesFit r = fit_regular_bayes(data, cfg);
      if (k_out) *k_out = r.k;
      return std::move(r.estimate);
    }
    case MethodSpec::Kind::klcv: {
      KlcvConfig cfg;
      cfg.grid = method.grid;
      cfg.support_lo = lo;
      cfg.support_hi = hi;
      cfg.k_n = method.k_cap;
      KlcvFit r = fit_klcv(data, cfg);
      if (k_out) *k_out = r.estimate.k();
      return std::move(r.estimate);
    }
  }
  throw std::invalid_argument("unknown method kind");
}

RiskEntry estimate_risk(const TestDensity& f0, std::int64_t n,
                        const MethodSpec& method, LossKind loss, int B,
                        std::uint64_t seed, int workers) {
  if (B < 1) throw std::invalid_argument("replication count must be >= 1");
  if (n < 2) throw std::invalid_argument("sample size must be >= 2");

  ToleranceVector tol;
  if (loss == LossKind::pid) tol = mode_tolerances(f0);

  std::vector<double> losses(std::size_t(B), 0.0);
  std::vector<int> ks(std::size_t(B), 0);
  parallel_for(B, workers, [&](int b) {
    const std::uint64_t sb =
        derive_seed(seed, {hash_label(f0.name), std::uint64_t(n),
                           hash_label(method.name), std::uint64_t(b)});
    const std::vector<double> data = f0.sample(std::size_t(n), sb);
    int k = 0;
    const HistogramEstimate est = run_method(method, data, f0, &k);
    double v = 0.0;
    switch (loss) {
      case LossKind::hellinger: v = hellinger(f0, est); break;
      case LossKind::l2: v = l2_loss(f0, est); break;
      case LossKind::kl: v = kl_loss(f0, est); break;
      case LossKind::pid: v = double(pid_loss(f0, tol, est)); break;
    }
    losses[std::size_t(b)] = v;
    ks[std::size_t(b)] = k;
  });

  // Ordered reduction: independent of how replications mapped to workers.
  double mean = 0.0, mean_k = 0.0;
  for (int b = 0; b < B; ++b) {
    mean += losses[std::size_t(b)];
    mean_k += double(ks[std::size_t(b)]);
  }
  mean /= double(B);
  mean_k /= double(B);
  double var = 0.0;
  for (int b = 0; b < B; ++b) {
    const double d = losses[std::size_t(b)] - mean;
    var += d * d;
  }
  const double se = B > 1 ? std::sqrt(var / double(B - 1) / double(B)) : 0.0;

  RiskEntry e;
  e.density = f0.name;
  e.n = n;
  e.method = method.name;
  e.loss = to_string(loss);
  e.risk = mean;
  e.std_error = se;
  e.replications = B;
  e.seed = seed;
  e.mean_k = mean_k;
  return e;
}

std::string RiskReport::to_csv() const {
  std::string out = "density,n,method,loss,risk,stderr,B,seed,mean_k\n";
  char buf[256];
  for (const RiskEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%s,%s,", e.density.c_str(),
                  (long long)e.n, e.method.c_str(), e.loss.c_str());
    out += buf;
    out += fmt_double(e.risk);
    out += ',';
    out += fmt_double(e.std_error);
    std::snprintf(buf, sizeof buf, ",%d,%llu,", e.replications,
                  (unsigned long long)e.seed);
    out += buf;
    out += fmt_double(e.mean_k);
    out += '\n';
  }
  return out;
}

void RiskReport::import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty csv import");
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  const std::vector<std::string> header = split(line);
  auto col = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return int(i);
    }
    return -1;
  };
  const int c_method = col("method"), c_density = col("density"), c_n = col("n"),
            c_loss = col("loss"), c_risk = col("risk");
  if (c_method < 0 || c_density < 0 || c_n < 0 || c_loss < 0 || c_risk < 0) {
    throw DataError("csv import needs method,density,n,loss,risk columns");
  }
  const int c_stderr = col("stderr"), c_b = col("B"), c_seed = col("seed"),
            c_meank = col("mean_k");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split(line);
    auto get = [&](int c) -> const std::string& {
      if (c < 0 || std::size_t(c) >= f.size()) {
        throw DataError("csv import: short row at line " + std::to_string(lineno));
      }
      return f[std::size_t(c)];
    };
    try {
      RiskEntry e;
      e.method = get(c_method);
      e.density = get(c_density);
      e.n = std::stoll(get(c_n));
      e.loss = get(c_loss);
      e.risk = std::stod(get(c_risk));
      if (c_stderr >= 0 && std::size_t(c_stderr) < f.size()) {
        e.std_error = std::stod(f[std::size_t(c_stderr)]);
      }
      if (c_b >= 0 && std::size_t(c_b) < f.size()) {
        e.replications = std::stoi(f[std::size_t(c_b)]);
      }
      if (c_seed >= 0 && std::size_t(c_seed) < f.size()) {
        e.seed = std::stoull(f[std::size_t(c_seed)]);
      }
      if (c_meank >= 0 && std::size_t(c_meank) < f.size()) {
        e.mean_k = std::stod(f[std::size_t(c_meank)]);
      }
      entries.push_back(std::move(e));
    } catch (const DataError&) {
      throw;
    } catch (const std::exception&) {
      throw DataError("csv import: bad value at line " + std::to_string(lineno));
    }
  }
}

std::string RiskReport::to_plot_json() const {
  nlohmann::json series = nlohmann::json::array();
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<std::int64_t, double>>> groups;
  for (const RiskEntry& e : entries) {
    const std::string key = e.density + "/" + e.loss + "/" + e.method;
    if (!groups.count(key)) order.push_back(key);
    groups[key].emplace_back(e.n, e.risk);
  }
  for (const std::string& key : order) {
    auto pts = groups[key];
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    nlohmann::json s;
    s["label"] = key;
    nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
    for (const auto& [x, y] : pts) {
      xs.push_back(x);
      ys.push_back(y);
    }
    s["x"] = xs;
    s["y"] = ys;
    series.push_back(s);
  }
  nlohmann::json root;
  root["series"] = series;
  return root.dump(2);
}

std::vector<RelativeRiskRow> relative_to(const RiskReport& report,
                                         const std::string& reference_method) {
  std::vector<RelativeRiskRow> rows;
  for (const RiskEntry& e : report.entries) {
    const RiskEntry* ref = nullptr;
    for (const RiskEntry& r : report.entries) {
      if (r.method == reference_method && r.density == e.density &&
          r.n == e.n && r.loss == e.loss) {
        ref = &r;
        break;
      }
    }
    if (!ref) continue;
    rows.push_back({e.density, e.n, e.loss, e.method,
                    std::log(e.risk / ref->risk)});
  }
  return rows;
}

namespace {

RiskReport run_method_grid(const std::vector<MethodSpec>& methods,
                           const std::vector<std::string>& density_ids,
                           const std::vector<std::int64_t>& ns, LossKind loss,
                           int B, std::uint64_t seed, int workers) {
  RiskReport report;
  for (const std::string& id : density_ids) {
    const TestDensity f0 = density_by_id(id);
    for (std::int64_t n : ns) {
      for (const MethodSpec& m : methods) {
        report.entries.push_back(
            estimate_risk(f0, n, m, loss, B, seed, workers));
      }
    }
  }
  return report;
}

void append_relative_rows(RiskReport& report, const std::string& ref_method,
                          const std::string& derived_loss_id) {
  const std::vector<RelativeRiskRow> rel = relative_to(report, ref_method);
  for (const RelativeRiskRow& r : rel) {
    RiskEntry e;
    e.density = r.density;
    e.n = r.n;
    e.method = r.method;
    e.loss = derived_loss_id;
    e.risk = r.log_rel;
    e.std_error = 0.0;
    report.entries.push_back(std::move(e));
  }
}

}  // namespace

RiskReport sensitivity_k_prior(const std::vector<std::string>& density_ids,
                               const std::vector<std::int64_t>& ns, int B,
                               std::uint64_t seed, int workers) {
  const std::vector<std::string> dens =
      density_ids.empty() ? std::vector<std::string>{"gamma_3_3", "beta_3_3", "t_3"}
                          : density_ids;
  const std::vector<std::int64_t> sizes =
      ns.empty() ? std::vector<std::int64_t>{100, 1000, 10000} : ns;

  std::vector<MethodSpec> methods;
  const std::pair<std::string, KPrior> priors[] = {
      {"uniform", KPrior::uniform()},
      {"power_1", KPrior::power(1.0)},
      {"power_2", KPrior::power(2.0)},
      {"poisson_1", KPrior::poisson(1.0)},
  };
  for (const auto& [nm, kp] : priors) {
    MethodSpec m;
    m.name = nm;
    m.kind = MethodSpec::Kind::rih;
    m.k_prior = kp;
    m.known_support = true;
    methods.push_back(std::move(m));
  }
  RiskReport report = run_method_grid(methods, dens, sizes,
                                      LossKind::hellinger, B, seed, workers);
  append_relative_rows(report, "uniform", "hellinger_log_rel_vs_uniform");
  return report;
}

RiskReport sensitivity_concentration(const std::vector<double>& a_values,
                                     const std::vector<std::string>& density_ids,
                                     const std::vector<std::int64_t>& ns, int B,
                                     std::uint64_t seed, int workers) {
  const std::vector<double> as =
      a_values.empty() ? std::vector<double>{0.01, 0.1, 1.0, 10.0, 100.0}
                       : a_values;
  const std::vector<std::string> dens =
      density_ids.empty() ? std::vector<std::string>{"gamma_3_3", "beta_3_3", "t_3"}
                          : density_ids;
  const std::vector<std::int64_t> sizes =
      ns.empty() ? std::vector<std::int64_t>{100, 1000, 10000} : ns;

  std::vector<MethodSpec> methods;
  for (double a : as) {
    MethodSpec m;
    char buf[32];
    std::snprintf(buf, sizeof buf, "a_%g", a);
    m.name = buf;
    m.kind = MethodSpec::Kind::rih;
    m.a_total = a;
    m.known_support = true;
    methods.push_back(std::move(m));
  }
  RiskReport report = run_method_grid(methods, dens, sizes,
                                      LossKind::hellinger, B, seed, workers);
  append_relative_rows(report, "a_1", "hellinger_log_rel_vs_a_1");
  return report;
}

std::vector<Pi0Entry> pi0_experiment(const std::vector<double>& pi0s,
                                     double beta,
                                     const std::vector<std::int64_t>& ns, int B,
                                     std::uint64_t seed, int workers,
                                     const std::vector<MethodSpec>& methods) {
  if (B < 1) throw std::invalid_argument("replication count must be >= 1");
  std::vector<MethodSpec> ms = methods;
  if (ms.empty()) {
    MethodSpec m;
    m.name = "rih";
    m.known_support = true;
    ms.push_back(std::move(m));
  }
  std::vector<Pi0Entry> out;
  for (double pi0 : pi0s) {
    const TestDensity f0 = make_pvalue_mixture(pi0, beta);
    for (std::int64_t n : ns) {
      for (const MethodSpec& m : ms) {
        MethodSpec pinned = m;
        pinned.known_support = true;  // the estimator needs f(1); support is [0,1]
        std::vector<double> sq_err(std::size_t(B), 0.0);
        parallel_for(B, workers, [&](int b) {
          const std::uint64_t sb = derive_seed(
              seed, {hash_label("pi0"), hash_label(f0.name), std::uint64_t(n),
                     hash_label(pinned.name), std::uint64_t(b)});
          const std::vector<double> data = f0.sample(std::size_t(n), sb);
          const HistogramEstimate est = run_method(pinned, data, f0);
          const double err = est(1.0) - pi0;
          sq_err[std::size_t(b)] = err * err;
        });
        double mse = 0.0;
        for (double e : sq_err) mse += e;
        mse /= double(B);
        out.push_back({pi0, beta, n, pinned.name, std::sqrt(mse), B, seed});
      }
    }
  }
  return out;
}

std::string pi0_to_csv(const std::vector<Pi0Entry>& entries) {
  std::string out = "pi0,beta,n,method,rmse,B,seed\n";
  char buf[128];
  for (const Pi0Entry& e : entries) {
    out += fmt_double(e.pi0);
    out += ',';
    out += fmt_double(e.beta);
    std::snprintf(buf, sizeof buf, ",%lld,%s,", (long long)e.n,
                  e.method.c_str());
    out += buf;
    out += fmt_double(e.rmse);
    std::snprintf(buf, sizeof buf, ",%d,%llu\n", e.replications,
                  (unsigned long long)e.seed);
    out += buf;
  }
  return out;
}

Summary summarize(const RiskReport& report) {
  Summary s;
  // Cells keyed by (density, n, loss), preserving first appearance.
  std::vector<std::tuple<std::string, std::int64_t, std::string>> cells;
  for (const RiskEntry& e : report.entries) {
    const auto key = std::make_tuple(e.density, e.n, e.loss);
    if (std::find(cells.begin(), cells.end(), key) == cells.end()) {
      cells.push_back(key);
    }
  }
  for (const auto& [density, n, loss] : cells) {
    std::vector<const RiskEntry*> cell;
    for (const RiskEntry& e : report.entries) {
      if (e.density == density && e.n == n && e.loss == loss) {
        cell.push_back(&e);
      }
    }
    double best = cell.front()->risk;
    for (const RiskEntry* e : cell) best = std::min(best, e->risk);
    for (const RiskEntry* e : cell) {
      // Midrank: 1 + (# strictly better) + (# ties - 1) / 2.
      int better = 0, ties = 0;
      for (const RiskEntry* o : cell) {
        if (o->risk < e->risk) ++better;
        if (o->risk == e->risk) ++ties;
      }
      SummaryRow row;
      row.density = density;
      row.n = n;
      row.loss = loss;
      row.method = e->method;
      row.risk = e->risk;
      row.lrr = best > 0.0 ? std::log(e->risk) - std::log(best)
                           : (e->risk == best ? 0.0
                                              : std::numeric_limits<double>::infinity());
      row.rank = 1.0 + double(better) + 0.5 * double(ties - 1);
      s.rows.push_back(std::move(row));
    }
  }
  // Median rank per (method, loss).
  std::vector<std::pair<std::string, std::string>> keys;
  for (const SummaryRow& r : s.rows) {
    const auto key = std::make_pair(r.method, r.loss);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [method, loss] : keys) {
    std::vector<double> ranks;
    for (const SummaryRow& r : s.rows) {
      if (r.method == method && r.loss == loss) ranks.push_back(r.rank);
    }
    std::sort(ranks.begin(), ranks.end());
    const std::size_t m = ranks.size();
    const double med = m % 2 == 1 ? ranks[m / 2]
                                  : 0.5 * (ranks[m / 2 - 1] + ranks[m / 2]);
    s.median_ranks.push_back({method, loss, med});
  }
  return s;
}

std::string Summary::to_csv() const {
  std::string out = "density,n,loss,method,risk,lrr,rank\n";
  char buf[128];
  for (const SummaryRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%s,%s,", r.density.c_str(),
                  (long long)r.n, r.loss.c_str(), r.method.c_str());
    out += buf;
    out += fmt_double(r.risk);
    out += ',';
    out += fmt_double(r.lrr);
    out += ',';
    out += fmt_double(r.rank);
    out += '\n';
  }
  out += "method,loss,median_rank\n";
  for (const MedianRank& m : median_ranks) {
    out += m.method + "," + m.loss + "," + fmt_double(m.median_rank) + "\n";
  }
  return out;
}

namespace {

MethodSpec parse_method(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("method entries must be objects");
  static const char* known[] = {"name", "kind", "a",       "k_prior",
                                "grid", "support", "exact", "k_cap"};
  std::string bad;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) ok = true;
    }
    if (!ok) bad += (bad.empty() ? "" : ", ") + it.key();
  }
  if (!bad.empty()) throw std::invalid_argument("unknown method keys: " + bad);
  if (!j.contains("kind")) throw std::invalid_argument("method needs a kind");

  MethodSpec m;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "rih") {
    m.kind = MethodSpec::Kind::rih;
  } else if (kind == "regular_bayes") {
    m.kind = MethodSpec::Kind::regular_bayes;
  } else if (kind == "klcv") {
    m.kind = MethodSpec::Kind::klcv;
  } else {
    throw std::invalid_argument("unknown method kind: " + kind);
  }
  m.name = j.value("name", kind);
  if (j.contains("a")) m.a_total = j["a"].get<double>();
  if (j.contains("k_prior")) {
    m.k_prior = KPrior::from_string(j["k_prior"].get<std::string>());
  }
  if (j.contains("grid")) {
    m.grid = mesh_kind_from_string(j["grid"].get<std::string>());
  }
  if (j.contains("support")) {
    const std::string s = j["support"].get<std::string>();
    if (s == "known") {
      m.known_support = true;
    } else if (s == "estimate") {
      m.known_support = false;
    } else {
      throw std::invalid_argument("method support must be 'known' or 'estimate'");
    }
  }
  if (j.contains("exact")) m.exact = j["exact"].get<bool>();
  if (j.contains("k_cap")) m.k_cap = j["k_cap"].get<int>();
  return m;
}

}  // namespace

CampaignConfig parse_campaign(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid json: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a json object");

  static const char* known[] = {"experiment", "densities", "n",    "methods",
                                "losses",     "B",         "seed", "a_values",
                                "pi0",        "beta",      "import_csv"};
  std::string bad;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) ok = true;
    }
    if (!ok) bad += (bad.empty() ? "" : ", ") + it.key();
  }
  if (!bad.empty()) throw std::invalid_argument("unknown config keys: " + bad);

  CampaignConfig cfg;
  const std::string exp = j.value("experiment", std::string("risk"));
  if (exp == "risk") {
    cfg.experiment = CampaignConfig::Experiment::risk;
  } else if (exp == "sensitivity_k") {
    cfg.experiment = CampaignConfig::Experiment::sensitivity_k;
  } else if (exp == "sensitivity_a") {
    cfg.experiment = CampaignConfig::Experiment::sensitivity_a;
  } else if (exp == "pi0") {
    cfg.experiment = CampaignConfig::Experiment::pi0;
  } else {
    throw std::invalid_argument("unknown experiment: " + exp);
  }

  if (j.contains("densities")) {
    cfg.densities = j["densities"].get<std::vector<std::string>>();
  }
  if (j.contains("n")) cfg.ns = j["n"].get<std::vector<std::int64_t>>();
  if (j.contains("methods")) {
    if (!j["methods"].is_array()) throw std::invalid_argument("methods must be an array");
    for (const auto& mj : j["methods"]) cfg.methods.push_back(parse_method(mj));
  }
  if (j.contains("losses")) {
    for (const auto& l : j["losses"].get<std::vector<std::string>>()) {
      cfg.losses.push_back(loss_from_string(l));
    }
  }
  if (j.contains("B")) cfg.B = j["B"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("a_values")) cfg.a_values = j["a_values"].get<std::vector<double>>();
  if (j.contains("pi0")) cfg.pi0s = j["pi0"].get<std::vector<double>>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
  if (j.contains("import_csv")) cfg.import_csv_path = j["import_csv"].get<std::string>();

  std::string missing;
  auto need = [&](bool ok, const char* key) {
    if (!ok) missing += (missing.empty() ? "" : ", ") + std::string(key);
  };
  need(cfg.B >= 1, "B");
  need(j.contains("seed"), "seed");
  switch (cfg.experiment) {
    case CampaignConfig::Experiment::risk:
      need(!cfg.densities.empty(), "densities");
      need(!cfg.ns.empty(), "n");
      need(!cfg.methods.empty(), "methods");
      need(!cfg.losses.empty(), "losses");
      break;
    case CampaignConfig::Experiment::sensitivity_k:
    case CampaignConfig::Experiment::sensitivity_a:
      break;
    case CampaignConfig::Experiment::pi0:
      need(!cfg.pi0s.empty(), "pi0");
      need(!cfg.ns.empty(), "n");
      break;
  }
  if (!missing.empty()) {
    throw std::invalid_argument("config keys missing or empty: " + missing);
  }
  // Densities must resolve before any sampling starts.
  for (const std::string& id : cfg.densities) density_by_id(id);
  return cfg;
}

CampaignOutput run_campaign(const CampaignConfig& cfg, int workers) {
  CampaignOutput out;
  RiskReport report;
  switch (cfg.experiment) {
    case CampaignConfig::Experiment::risk: {
      for (const std::string& id : cfg.densities) {
        const TestDensity f0 = density_by_id(id);
        for (std::int64_t n : cfg.ns) {
          for (const MethodSpec& m : cfg.methods) {
            for (LossKind loss : cfg.losses) {
              report.entries.push_back(
                  estimate_risk(f0, n, m, loss, cfg.B, cfg.seed, workers));
            }
          }
        }
      }
      break;
    }
    case CampaignConfig::Experiment::sensitivity_k:
      report = sensitivity_k_prior(cfg.densities, cfg.ns, cfg.B, cfg.seed, workers);
      break;
    case CampaignConfig::Experiment::sensitivity_a:
      report = sensitivity_concentration(cfg.a_values, cfg.densities, cfg.ns,
                                         cfg.B, cfg.seed, workers);
      break;
    case CampaignConfig::Experiment::pi0: {
      const std::vector<Pi0Entry> rows = pi0_experiment(
          cfg.pi0s, cfg.beta, cfg.ns, cfg.B, cfg.seed, workers, cfg.methods);
      out.csv = pi0_to_csv(rows);
      nlohmann::json series = nlohmann::json::array();
      for (const MethodSpec& m :
           cfg.methods.empty() ? std::vector<MethodSpec>{MethodSpec{}} : cfg.methods) {
        for (double pi0 : cfg.pi0s) {
          nlohmann::json s;
          char label[96];
          std::snprintf(label, sizeof label, "pi0=%g/%s", pi0, m.name.c_str());
          s["label"] = label;
          nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
          for (const Pi0Entry& e : rows) {
            if (e.pi0 == pi0 && e.method == m.name) {
              xs.push_back(e.n);
              ys.push_back(e.rmse);
            }
          }
          s["x"] = xs;
          s["y"] = ys;
          series.push_back(s);
        }
      }
      nlohmann::json root;
      root["series"] = series;
      out.plot_json = root.dump(2);
      return out;
    }
  }

  if (!cfg.import_csv_path.empty()) {
    std::ifstream in(cfg.import_csv_path);
    if (!in) throw DataError("cannot open import csv: " + cfg.import_csv_path);
    report.import_csv(in);
  }
  out.csv = report.to_csv();
  out.plot_json = report.to_plot_json();
  out.summary_csv = summarize(report).to_csv();
  return out;
}

}  // namespace rih
