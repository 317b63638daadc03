#ifndef WIENERKIT_H
#define WIENERKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WK_API __declspec(dllexport)
#else
#define WK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wk_status {
  WK_OK = 0,
  WK_ERR_INPUT = 1,    /* malformed input or parameters */
  WK_ERR_DOMAIN = 2,   /* quantity undefined at the requested point */
  WK_ERR_NUMERIC = 3,  /* tolerance not reached; see wk_last_numeric */
  WK_ERR_INTERNAL = 4
} wk_status;

typedef struct wk_sequence wk_sequence;
typedef struct wk_measure wk_measure;
typedef struct wk_sampled wk_sampled;
typedef struct wk_report wk_report;

enum { WK_TAIL_ANALYTIC_BOUND = 0, WK_TAIL_EXTRAPOLATE = 1 };

typedef struct wk_quad_spec {
  double abs_tol;
  double rel_tol;
  int max_depth;
  double line_radius;
  int tail_mode;
} wk_quad_spec;

/* Library defaults (abs 1e-10, rel 1e-9, depth 40, R = 256π, extrapolate). */
WK_API void wk_quad_spec_default(wk_quad_spec* spec);

/* Message of the last failed call on this thread ("" if none). */
WK_API const char* wk_last_error(void);
/* Best estimate and achieved error of the last WK_ERR_NUMERIC on this thread. */
WK_API void wk_last_numeric(double* best_estimate, double* achieved_error);
WK_API const char* wk_version(void);
/* Caps worker threads; 0 restores WIENERKIT_THREADS / hardware parallelism. */
WK_API void wk_set_max_threads(int n);
/* 0 for WK_OK, 2 for input/domain errors, 4 otherwise. */
WK_API int wk_exit_code_for_status(wk_status s);

/* ---- coefficient sequences ---- */

/* c_k for k = offset .. offset+n-1; im may be NULL. */
WK_API wk_status wk_sequence_create(int64_t offset, const double* re, const double* im, size_t n, wk_sequence** out);
WK_API wk_status wk_sequence_read(const char* path, wk_sequence** out);
WK_API wk_status wk_sequence_write(const wk_sequence* c, const char* path);
WK_API void wk_sequence_destroy(wk_sequence* c);
WK_API int64_t wk_sequence_offset(const wk_sequence* c);
WK_API size_t wk_sequence_size(const wk_sequence* c);
/* Zero outside the stored block. */
WK_API wk_status wk_sequence_get(const wk_sequence* c, int64_t k, double* re, double* im);
WK_API wk_status wk_sequence_diff(const wk_sequence* c, wk_sequence** out);
WK_API wk_status wk_sequence_bv_norm(const wk_sequence* c, double* out);
WK_API wk_status wk_sequence_lp_norm(const wk_sequence* c, double p, double* out);

/* Parametric family (name as on the command line, params "k=v,..."). Writes
   exactly one of *seq (coefficient families) or *fn (chirp); the other is NULL. */
WK_API wk_status wk_family_generate(const char* name, const char* params, int64_t truncation, wk_sequence** seq,
                                    wk_sampled** fn);

/* ---- transforms and norms ---- */

WK_API wk_status wk_zigzag_ft(const wk_sequence* c, double x, double* re, double* im);
WK_API wk_status wk_fold_sum(double y, int64_t K, double* value, double* tail_bound);
WK_API wk_status wk_dht(const wk_sequence* c, int64_t n, double* re, double* im);
WK_API wk_status wk_w0_norm_fejer(const wk_sequence* c, int64_t n, const wk_quad_spec* spec, double* out);
WK_API wk_status wk_w0_norm_line(const wk_sequence* c, int64_t n, const wk_quad_spec* spec, double* out);

/* ---- measures: atoms at t_j in (-π, π] with complex weights ---- */

WK_API wk_status wk_measure_create(const double* t, const double* re, const double* im, size_t n, wk_measure** out);
WK_API void wk_measure_destroy(wk_measure* mu);
WK_API wk_status wk_measure_variation(const wk_measure* mu, double* out);
WK_API wk_status wk_measure_coefficients(const wk_measure* mu, int64_t n, wk_sequence** out);
WK_API wk_status wk_stieltjes_transform(const wk_measure* mu, double x, double* re, double* im);

/* ---- sampled periodic functions on [-a, a) ---- */

WK_API wk_status wk_sampled_create(double halfperiod, const double* re, const double* im, size_t m, wk_sampled** out);
WK_API void wk_sampled_destroy(wk_sampled* f);
WK_API size_t wk_sampled_size(const wk_sampled* f);
WK_API wk_status wk_sampled_eval(const wk_sampled* f, double x, double* re, double* im);
/* l2 = 0: sup-norm modulus, otherwise the L2 modulus. */
WK_API wk_status wk_sampled_modulus(const wk_sampled* f, double h, int l2, double* out);
WK_API wk_status wk_sampled_best_l2_tail(const wk_sampled* f, int64_t n, double* out);

/* ---- analysis reports ---- */

typedef struct wk_analyze_request {
  const char* coeffs_path;  /* exactly one of coeffs_path and family */
  const char* family;
  const char* params;       /* may be NULL */
  int64_t truncation;       /* 0: 4 x largest ladder entry */
  const char* tests;        /* comma list, NULL or "all" for every test */
  const char* n_ladder;     /* comma list, NULL for 16,32,...,4096 */
  double tol;               /* <= 0: default tolerances */
  int fourier_normalization; /* input coefficients carry a 1/(2π) factor */
} wk_analyze_request;

WK_API void wk_analyze_request_default(wk_analyze_request* req);
WK_API wk_status wk_analyze(const wk_analyze_request* req, wk_report** out);
WK_API wk_status wk_gallery(const char* case_name, const char* params, wk_report** out);
/* Valid until the report is destroyed. */
WK_API const char* wk_report_json(wk_report* r, int include_timing);
/* 0, or 3 when a necessary test failed. */
WK_API int wk_report_exit_code(const wk_report* r);
WK_API size_t wk_report_test_count(const wk_report* r);
/* Name and status string of test i; valid until the report is destroyed. */
WK_API wk_status wk_report_test(const wk_report* r, size_t i, const char** name, const char** status);
WK_API const char* wk_report_verdict(const wk_report* r);
WK_API wk_status wk_report_emit_plot_data(const wk_report* r, const char* dir);
WK_API void wk_report_destroy(wk_report* r);

#ifdef __cplusplus
}
#endif

#endif
