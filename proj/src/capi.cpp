#include "rih/rih.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "common.hpp"
#include "search.hpp"
#include "simulation.hpp"

struct rih_histogram {
  rih::FitResult result;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

// Maps the library's exception taxonomy onto the C error codes.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RIH_OK;
  } catch (const std::invalid_argument& e) {
    return fail(RIH_ERR_USAGE, e.what());
  } catch (const rih::DataError& e) {
    return fail(RIH_ERR_DATA, e.what());
  } catch (const rih::NumericError& e) {
    return fail(RIH_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc& e) {
    return fail(RIH_ERR_NUMERIC, "out of memory");
  } catch (const std::exception& e) {
    return fail(RIH_ERR_NUMERIC, e.what());
  }
}

}  // namespace

extern "C" {

void rih_fit_options_init(rih_fit_options* opts) {
  if (!opts) return;
  opts->grid = nullptr;
  opts->a = 0.0;
  opts->k_prior = nullptr;
  opts->has_support = 0;
  opts->support_lo = 0.0;
  opts->support_hi = 0.0;
  opts->exact = 0;
  opts->seed = 0;
}

int rih_fit(const double* data, size_t n, const rih_fit_options* opts,
            rih_histogram** out) {
  if (!out) return fail(RIH_ERR_USAGE, "null output handle");
  *out = nullptr;
  if (!data && n > 0) return fail(RIH_ERR_USAGE, "null data pointer");
  return guarded([&] {
    rih::FitConfig cfg;
    if (opts) {
      if (opts->grid) cfg.grid = rih::mesh_kind_from_string(opts->grid);
      if (opts->a > 0.0) cfg.a_total = opts->a;
      if (opts->k_prior) cfg.k_prior = rih::KPrior::from_string(opts->k_prior);
      if (opts->has_support) {
        cfg.support_lo = opts->support_lo;
        cfg.support_hi = opts->support_hi;
      }
      cfg.exact = opts->exact != 0;
    }
    rih::FitResult r = rih::fit({data, n}, cfg);
    *out = new rih_histogram{std::move(r)};
  });
}

void rih_histogram_free(rih_histogram* h) { delete h; }

size_t rih_histogram_num_bins(const rih_histogram* h) {
  return h ? size_t(h->result.estimate.k()) : 0;
}

int rih_histogram_breaks(const rih_histogram* h, double* out, size_t len) {
  if (!h || !out) return fail(RIH_ERR_USAGE, "null argument");
  const std::vector<double> b = h->result.estimate.breaks();
  if (len < b.size()) return fail(RIH_ERR_USAGE, "output buffer too small");
  std::memcpy(out, b.data(), b.size() * sizeof(double));
  g_last_error.clear();
  return RIH_OK;
}

int rih_histogram_probs(const rih_histogram* h, double* out, size_t len) {
  if (!h || !out) return fail(RIH_ERR_USAGE, "null argument");
  const std::vector<double>& p = h->result.estimate.probs();
  if (len < p.size()) return fail(RIH_ERR_USAGE, "output buffer too small");
  std::memcpy(out, p.data(), p.size() * sizeof(double));
  g_last_error.clear();
  return RIH_OK;
}

double rih_histogram_eval(const rih_histogram* h, double x) {
  return h ? h->result.estimate(x) : 0.0;
}

double rih_histogram_score(const rih_histogram* h) {
  return h ? h->result.search.score : 0.0;
}

int rih_histogram_effective_kn(const rih_histogram* h) {
  return h ? h->result.effective_kn : 0;
}

char* rih_histogram_to_json(const rih_histogram* h) {
  if (!h) return nullptr;
  try {
    const std::string s = rih::fit_to_json(h->result);
    char* buf = static_cast<char*>(::malloc(s.size() + 1));
    if (!buf) return nullptr;
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
  } catch (const std::exception&) {
    return nullptr;
  }
}

void rih_string_free(char* s) { ::free(s); }

int rih_simulate(const char* config_json, const char* out_csv_path,
                 const char* out_plot_json_path,
                 const char* out_summary_csv_path, int workers) {
  if (!config_json || !out_csv_path) {
    return fail(RIH_ERR_USAGE, "null config or output path");
  }
  return guarded([&] {
    const rih::CampaignConfig cfg = rih::parse_campaign(config_json);
    const rih::CampaignOutput out =
        rih::run_campaign(cfg, workers <= 0 ? 1 : workers);
    const auto write = [](const char* path, const std::string& text) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw rih::DataError(std::string("cannot write ") + path);
      f << text;
    };
    write(out_csv_path, out.csv);
    if (out_plot_json_path) write(out_plot_json_path, out.plot_json);
    if (out_summary_csv_path) write(out_summary_csv_path, out.summary_csv);
  });
}

const char* rih_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
