/* C API for the COTAR localization library.
 *
 * Opaque-handle, error-code surface intended for linking from C, CLIs and
 * foreign-language bindings. Every run_* call loads work described by a
 * config handle and writes CSV/JSON artifacts into an output directory.
 */
#ifndef COTAR_H
#define COTAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COTAR_API __declspec(dllexport)
#else
#define COTAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cotar_config cotar_config;

typedef enum {
  COTAR_OK = 0,
  COTAR_ERR_RUNTIME = 1, /* solver/geometry/I-O failure */
  COTAR_ERR_CONFIG = 2   /* parse failure or invariant violation */
} cotar_status;

COTAR_API const char* cotar_version(void);

/* Load and validate a JSON config file. On failure returns a non-zero status
 * and, when err/err_len are provided, a single-line message naming the
 * offending field. */
COTAR_API cotar_status cotar_config_load(const char* path, cotar_config** out_config,
                                         char* err, size_t err_len);
COTAR_API void cotar_config_free(cotar_config* config);

/* Overrides applied after load; they do not modify the file. */
COTAR_API void cotar_config_set_seed(cotar_config* config, uint64_t seed);
COTAR_API void cotar_config_set_threads(cotar_config* config, int threads);

/* Bound maps for all four schemes over the configured lattice
 * (crb_map_<scheme>.csv per scheme). */
COTAR_API cotar_status cotar_run_crb_map(const cotar_config* config, const char* out_dir,
                                         char* err, size_t err_len);

/* Monte-Carlo localization over the lattice (trials.csv, rms_grid.csv,
 * summary.json). */
COTAR_API cotar_status cotar_run_static(const cotar_config* config, const char* out_dir,
                                        char* err, size_t err_len);

/* Bound + Monte-Carlo RMS per (N, delta) at the scenario center
 * (cooperation.csv, summary.json). Passing NULL lists selects the defaults
 * N in {1,2,4,9,16,25}, delta in {1}. */
COTAR_API cotar_status cotar_run_cooperation_sweep(const cotar_config* config,
                                                   const int* n_values, size_t n_count,
                                                   const double* delta_values, size_t delta_count,
                                                   const char* out_dir, char* err, size_t err_len);

/* Monte-Carlo RMS vs missing neighbor-RSS probability at the scenario center
 * (missing_rss.csv, summary.json). NULL selects p in {0, 0.1, ..., 1}. */
COTAR_API cotar_status cotar_run_missing_rss_sweep(const cotar_config* config,
                                                   const double* p_values, size_t p_count,
                                                   const char* out_dir, char* err, size_t err_len);

/* Mobile tracking with wall reflection (trials.csv, summary.json). `tracks`
 * <= 0 selects the default of 200. Requires a mobility block in the config. */
COTAR_API cotar_status cotar_run_mobile(const cotar_config* config, int tracks,
                                        const char* out_dir, char* err, size_t err_len);

#ifdef __cplusplus
}
#endif

#endif /* COTAR_H */
