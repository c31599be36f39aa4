// Command-line front end: fit histograms, run simulation campaigns, estimate
// the null proportion from p-values. Links the C API only.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rih/rih.h"

namespace {

// Exit codes shared with the library: 2 usage, 3 data, 4 numeric.
int report_error(int code) {
  std::cerr << "error: " << rih_last_error() << "\n";
  return code;
}

int read_values(const std::string& path, std::vector<double>& out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return RIH_ERR_DATA;
  }
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      std::cerr << "error: non-numeric value '" << tok << "' in " << path << "\n";
      return RIH_ERR_DATA;
    }
  }
  if (out.empty()) {
    std::cerr << "error: no values in " << path << "\n";
    return RIH_ERR_DATA;
  }
  return RIH_OK;
}

int parse_support(const std::string& s, double& lo, double& hi) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return RIH_ERR_USAGE;
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    lo = std::stod(a, &used);
    if (used != a.size()) return RIH_ERR_USAGE;
    hi = std::stod(b, &used);
    if (used != b.size()) return RIH_ERR_USAGE;
  } catch (const std::exception&) {
    return RIH_ERR_USAGE;
  }
  return RIH_OK;
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return RIH_OK;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return RIH_ERR_DATA;
  }
  f << text;
  return RIH_OK;
}

int fit_file(const std::string& input, const rih_fit_options& opts,
             rih_histogram** out) {
  std::vector<double> data;
  if (int rc = read_values(input, data); rc != RIH_OK) return rc;
  if (int rc = rih_fit(data.data(), data.size(), &opts, out); rc != RIH_OK) {
    return report_error(rc);
  }
  return RIH_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irregular Bayesian histograms: fitting and risk experiments"};
  app.require_subcommand(1);

  // fit
  std::string fit_input, fit_grid = "quantile", fit_kprior = "uniform";
  std::string fit_support, fit_output;
  double fit_a = 5.0;
  bool fit_exact = false;
  std::uint64_t fit_seed = 0;
  CLI::App* fit = app.add_subcommand("fit", "Fit a histogram to a data file");
  fit->add_option("input", fit_input, "Data file, one value per line")->required();
  fit->add_option("--grid", fit_grid, "Candidate grid: regular|quantile|orderstat");
  fit->add_option("--a", fit_a, "Concentration parameter (default 5)");
  fit->add_option("--k-prior", fit_kprior,
                  "Bin-count prior: uniform|power:<m>|poisson:<rate>");
  fit->add_option("--support", fit_support, "Fixed support as lo,hi");
  fit->add_flag("--exact", fit_exact, "Search the full mesh, no greedy reduction");
  fit->add_option("--seed", fit_seed, "Seed (reserved; fitting is deterministic)");
  fit->add_option("-o,--output", fit_output, "Output path (default stdout)");

  // simulate
  std::string sim_config, sim_csv = "risk.csv", sim_plot, sim_summary;
  int sim_workers = 1;
  CLI::App* sim = app.add_subcommand("simulate", "Run a simulation campaign");
  sim->add_option("config", sim_config, "Campaign config JSON file")->required();
  sim->add_option("-o,--output", sim_csv, "Report CSV path (default risk.csv)");
  sim->add_option("--plot-json", sim_plot, "Plot-data JSON path");
  sim->add_option("--summary-csv", sim_summary, "LRR/rank summary CSV path");
  sim->add_option("--workers", sim_workers, "Worker threads (default 1)");

  // pi0
  std::string pi0_input;
  CLI::App* pi0 = app.add_subcommand(
      "pi0", "Estimate the null proportion from a p-value file");
  pi0->add_option("input", pi0_input, "P-value file, one value per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return RIH_ERR_USAGE;
  }

  if (fit->parsed()) {
    rih_fit_options opts;
    rih_fit_options_init(&opts);
    opts.grid = fit_grid.c_str();
    opts.a = fit_a;
    opts.k_prior = fit_kprior.c_str();
    opts.exact = fit_exact ? 1 : 0;
    opts.seed = fit_seed;
    if (!fit_support.empty()) {
      if (parse_support(fit_support, opts.support_lo, opts.support_hi) != RIH_OK) {
        std::cerr << "error: --support expects lo,hi\n";
        return RIH_ERR_USAGE;
      }
      opts.has_support = 1;
    }
    rih_histogram* h = nullptr;
    if (int rc = fit_file(fit_input, opts, &h); rc != RIH_OK) return rc;
    char* json = rih_histogram_to_json(h);
    const std::string text = json ? json : "";
    rih_string_free(json);
    rih_histogram_free(h);
    if (text.empty()) {
      std::cerr << "error: could not serialize the fit\n";
      return RIH_ERR_NUMERIC;
    }
    return write_text(fit_output, text);
  }

  if (sim->parsed()) {
    std::ifstream in(sim_config);
    if (!in) {
      std::cerr << "error: cannot open " << sim_config << "\n";
      return RIH_ERR_DATA;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string config = ss.str();
    const int rc = rih_simulate(config.c_str(), sim_csv.c_str(),
                                sim_plot.empty() ? nullptr : sim_plot.c_str(),
                                sim_summary.empty() ? nullptr : sim_summary.c_str(),
                                sim_workers);
    if (rc != RIH_OK) return report_error(rc);
    return 0;
  }

  if (pi0->parsed()) {
    std::vector<double> data;
    if (int rc = read_values(pi0_input, data); rc != RIH_OK) return rc;
    for (double v : data) {
      if (!(v >= 0.0 && v <= 1.0)) {
        std::cerr << "error: p-values must lie in [0, 1]\n";
        return RIH_ERR_DATA;
      }
    }
    rih_fit_options opts;
    rih_fit_options_init(&opts);
    opts.has_support = 1;
    opts.support_lo = 0.0;
    opts.support_hi = 1.0;
    rih_histogram* h = nullptr;
    if (int rc = rih_fit(data.data(), data.size(), &opts, &h); rc != RIH_OK) {
      return report_error(rc);
    }
    const double pi0_hat = rih_histogram_eval(h, 1.0);
    rih_histogram_free(h);
    std::printf("%.10g\n", pi0_hat);
    return 0;
  }

  return RIH_ERR_USAGE;
}
