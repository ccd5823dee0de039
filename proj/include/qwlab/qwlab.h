/*
 * qwlab C API.
 *
 * Every function returns a qwl_status; on failure a human-readable message
 * is available from qwl_last_error() on the calling thread until the next
 * call into the library. Handles are opaque and owned by the caller once
 * returned; release them with the matching *_destroy function (NULL is a
 * no-op).
 *
 * Complex data crosses the boundary as interleaved (re, im) doubles:
 * a 3-vector is 6 doubles, a 9-vector 18, a 9x9 matrix 162 (row-major).
 * Product vectors flatten x (x) y with index 3*i + j for x_i y_j.
 */
#ifndef QWLAB_QWLAB_H
#define QWLAB_QWLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(QWLAB_BUILDING_LIBRARY)
#define QWLAB_API __attribute__((visibility("default")))
#else
#define QWLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwl_status {
  QWL_OK = 0,
  QWL_ERR_INVALID_ARGUMENT = 1,
  QWL_ERR_NOT_ON_ELLIPSE = 2,
  QWL_ERR_DEGENERATE = 3,
  QWL_ERR_NUMERIC = 4,
  QWL_ERR_NULL_HANDLE = 5,
  QWL_ERR_INTERNAL = 6
} qwl_status;

QWLAB_API const char* qwl_version(void);
QWLAB_API const char* qwl_last_error(void);
QWLAB_API const char* qwl_status_name(qwl_status status);

/* ---- witnesses ---------------------------------------------------------- */

typedef struct qwl_witness qwl_witness;

/* Rejects negative or non-finite parameters. */
QWLAB_API qwl_status qwl_witness_create(double a, double b, double c, qwl_witness** out);
QWLAB_API void qwl_witness_destroy(qwl_witness* w);
QWLAB_API qwl_status qwl_witness_params(const qwl_witness* w, double out_abc[3]);
QWLAB_API qwl_status qwl_witness_matrix(const qwl_witness* w, double out[162]);

#define QWL_COND_A_RANGE 1u
#define QWL_COND_SUM_AT_LEAST_TWO 2u
#define QWL_COND_PRODUCT_BOUND 4u

typedef struct qwl_classification {
  int is_witness;
  int indecomposable; /* 1, 0, or -1 when not a witness */
  int on_ellipse;
  int is_psd;
  unsigned failed_conditions; /* QWL_COND_* bitmask */
} qwl_classification;

QWLAB_API qwl_status qwl_witness_classify(const qwl_witness* w, double tol, qwl_classification* out);

/* <x (x) y| W |x (x) y> */
QWLAB_API qwl_status qwl_witness_expectation(const qwl_witness* w, const double x[6], const double y[6],
                                             double* out);

/* Tr_2(W (I (x) |y><y|)) and its counterpart over the first factor. */
QWLAB_API qwl_status qwl_witness_reduce_second(const qwl_witness* w, const double y[6], double out[18]);
QWLAB_API qwl_status qwl_witness_reduce_first(const qwl_witness* w, const double x[6], double out[18]);

/* ---- ellipse a+b+c=2, bc=(1-a)^2 ---------------------------------------- */

/* a in [0, 4/3]; upper = 0 gives b <= c. */
QWLAB_API qwl_status qwl_ellipse_point(double a, int upper, double out_abc[3]);
QWLAB_API int qwl_on_ellipse(double b, double c, double tol);

/* ---- spanning reports --------------------------------------------------- */

typedef struct qwl_span_report qwl_span_report;

typedef struct qwl_span_options {
  double phi1;
  double phi2;
  int numeric_fallback;
  int n_starts;
  double zero_tol;
  uint64_t seed;
  double ellipse_tol;
} qwl_span_options;

#define QWL_METHOD_CLOSED_FORM 0
#define QWL_METHOD_NUMERIC_SEARCH 1

QWLAB_API void qwl_span_options_default(qwl_span_options* opts);
/* opts may be NULL for defaults. The witness must lie on the ellipse. */
QWLAB_API qwl_status qwl_span_compute(const qwl_witness* w, const qwl_span_options* opts,
                                      qwl_span_report** out);
QWLAB_API void qwl_span_destroy(qwl_span_report* r);
QWLAB_API int qwl_span_rank(const qwl_span_report* r);
QWLAB_API int qwl_span_spanning(const qwl_span_report* r);
QWLAB_API int qwl_span_method(const qwl_span_report* r);
QWLAB_API int qwl_span_degenerate(const qwl_span_report* r);
QWLAB_API size_t qwl_span_vector_count(const qwl_span_report* r);
QWLAB_API qwl_status qwl_span_vector(const qwl_span_report* r, size_t index, double out[18]);
QWLAB_API const char* qwl_span_notes(const qwl_span_report* r);

/* ---- see-saw minimization ----------------------------------------------- */

typedef struct qwl_seesaw_result {
  double min_value;
  double x[6];
  double y[6];
  int converged;
  int monotone;
  int unconverged_starts;
} qwl_seesaw_result;

QWLAB_API qwl_status qwl_seesaw_minimize(const qwl_witness* w, int n_starts, int max_iters, uint64_t seed,
                                         qwl_seesaw_result* out);

/* ---- batch jobs --------------------------------------------------------- */

typedef struct qwl_config qwl_config;
typedef struct qwl_text qwl_text;

#define QWL_FORMAT_CSV 0
#define QWL_FORMAT_JSON 1

QWLAB_API qwl_status qwl_config_create(qwl_config** out);
QWLAB_API void qwl_config_destroy(qwl_config* cfg);
QWLAB_API qwl_status qwl_config_set_command_line(qwl_config* cfg, const char* command_line);
QWLAB_API qwl_status qwl_config_set_seed(qwl_config* cfg, uint64_t seed);
QWLAB_API qwl_status qwl_config_set_tolerance(qwl_config* cfg, const char* name, double value);
QWLAB_API qwl_status qwl_config_set_format(qwl_config* cfg, int format);

QWLAB_API const char* qwl_text_data(const qwl_text* t);
QWLAB_API size_t qwl_text_size(const qwl_text* t);
QWLAB_API void qwl_text_destroy(qwl_text* t);

/* Each job renders a complete document (JSON unless noted) into *out. */
QWLAB_API qwl_status qwl_run_classify(const qwl_config* cfg, double a, double b, double c, double tol,
                                      qwl_text** out);
QWLAB_API qwl_status qwl_run_span(const qwl_config* cfg, double b, double c, double ellipse_tol,
                                  const qwl_span_options* opts, int include_vectors, qwl_text** out);
/* CSV or JSON per the config format. */
QWLAB_API qwl_status qwl_run_ellipse(const qwl_config* cfg, int samples, qwl_text** out);
QWLAB_API qwl_status qwl_run_scan(const qwl_config* cfg, int grid, double tol, qwl_text** out);
/* Uses the config seed. */
QWLAB_API qwl_status qwl_run_minimize(const qwl_config* cfg, double a, double b, double c, int n_starts,
                                      int max_iters, qwl_text** out);
/* tamper: -1 for none, otherwise flip the sign of one witness entry (0..14).
 * *all_pass is set to 1 iff no claim failed. */
QWLAB_API qwl_status qwl_run_verify(const qwl_config* cfg, int quick, int tamper, qwl_text** out,
                                    int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* QWLAB_QWLAB_H */
