/* C interface to the irregular Bayesian histogram library.
 *
 * All functions return RIH_OK (0) or an error code; rih_last_error() gives a
 * thread-local message for the most recent failure on the calling thread.
 * Handles are opaque and must be released with their matching free function.
 */
#ifndef RIH_H
#define RIH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RIH_OK 0
#define RIH_ERR_USAGE 2   /* bad arguments or configuration */
#define RIH_ERR_DATA 3    /* unusable input data */
#define RIH_ERR_NUMERIC 4 /* numerical failure */

typedef struct rih_histogram rih_histogram;

typedef struct rih_fit_options {
  const char* grid;    /* "regular" | "quantile" | "orderstat"; NULL = quantile */
  double a;            /* concentration; <= 0 means the default 5 */
  const char* k_prior; /* "uniform" | "power:<m>" | "poisson:<rate>"; NULL = uniform */
  int has_support;     /* nonzero: use support_lo/support_hi */
  double support_lo;
  double support_hi;
  int exact;           /* nonzero: full-mesh search regardless of size */
  uint64_t seed;       /* reserved for seeded extensions; fitting is deterministic */
} rih_fit_options;

/* Fills opts with the defaults described above. */
void rih_fit_options_init(rih_fit_options* opts);

/* Fits a histogram to n data points. On success *out owns the result. */
int rih_fit(const double* data, size_t n, const rih_fit_options* opts,
            rih_histogram** out);

void rih_histogram_free(rih_histogram* h);

size_t rih_histogram_num_bins(const rih_histogram* h);

/* Copies the k+1 bin edges (data scale) into out (capacity len). */
int rih_histogram_breaks(const rih_histogram* h, double* out, size_t len);

/* Copies the k bin probabilities into out (capacity len). */
int rih_histogram_probs(const rih_histogram* h, double* out, size_t len);

/* Density at x; zero outside the fitted support. */
double rih_histogram_eval(const rih_histogram* h, double x);

/* Unnormalized log posterior of the fitted partition. */
double rih_histogram_score(const rih_histogram* h);

/* Number of bins the mesh offered after deduplication. */
int rih_histogram_effective_kn(const rih_histogram* h);

/* JSON with breaks/probs/density plus k, score, method, support, f_at_hi.
 * Free with rih_string_free. NULL on allocation failure. */
char* rih_histogram_to_json(const rih_histogram* h);

void rih_string_free(char* s);

/* Runs a simulation campaign from a JSON config (see the README). Writes the
 * report CSV to out_csv_path; when out_plot_json_path / out_summary_csv_path
 * are non-NULL, also writes plot-data JSON and the LRR/rank summary CSV.
 * workers <= 0 means one worker. */
int rih_simulate(const char* config_json, const char* out_csv_path,
                 const char* out_plot_json_path,
                 const char* out_summary_csv_path, int workers);

/* Message for the last failure on this thread; empty string if none. */
const char* rih_last_error(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RIH_H */
