/*
 * svtail - multi-label least-squares learning with spectral regularizers.
 *
 * C interface to the svtail core. All functions that can fail return an int
 * status code from the SVTAIL_* list below and leave a human-readable
 * message in svtail_last_error() (thread-local). Objects are created behind
 * opaque handles and must be released with their matching _free function.
 * Out-parameters are written only on SVTAIL_OK.
 */

#ifndef SVTAIL_H
#define SVTAIL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SVTAIL_BUILD)
#    define SVTAIL_API __declspec(dllexport)
#  else
#    define SVTAIL_API __declspec(dllimport)
#  endif
#else
#  define SVTAIL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
enum {
    SVTAIL_OK = 0,
    SVTAIL_ERR_USAGE = 1,   /* precondition violated by the caller */
    SVTAIL_ERR_PARSE = 2,   /* malformed input file */
    SVTAIL_ERR_IO = 3,      /* file could not be opened/read/written */
    SVTAIL_ERR_NUMERIC = 4, /* iteration failed to converge or diverged */
    SVTAIL_ERR_DOMAIN = 5,  /* quantity undefined on the given data */
    SVTAIL_ERR_UNKNOWN = 6
};

/* Message for the most recent failure on this thread; empty string if none. */
SVTAIL_API const char* svtail_last_error(void);

/* Library version as "major.minor.patch". */
SVTAIL_API const char* svtail_version(void);

/* ------------------------------------------------------------------ */
/* Matrices                                                            */
/* ------------------------------------------------------------------ */

typedef struct svtail_matrix svtail_matrix;

/* Creates a rows x cols matrix from row-major data (all entries finite).
 * data may be NULL for a zero matrix. */
SVTAIL_API int svtail_matrix_create(size_t rows, size_t cols, const double* data,
                                    svtail_matrix** out);
SVTAIL_API void svtail_matrix_free(svtail_matrix* m);
SVTAIL_API size_t svtail_matrix_rows(const svtail_matrix* m);
SVTAIL_API size_t svtail_matrix_cols(const svtail_matrix* m);
SVTAIL_API int svtail_matrix_get(const svtail_matrix* m, size_t i, size_t j,
                                 double* out);
/* Copies all rows*cols entries, row-major, into buf (buflen = capacity). */
SVTAIL_API int svtail_matrix_copy_data(const svtail_matrix* m, double* buf,
                                       size_t buflen);

/* Singular values in descending order. buf receives min(rows, cols) values;
 * *count is set to that number. */
SVTAIL_API int svtail_singular_values(const svtail_matrix* m, double* buf,
                                      size_t buflen, size_t* count);
SVTAIL_API int svtail_trace_norm(const svtail_matrix* m, double* out);
/* Sum of the singular values after the first theta. */
SVTAIL_API int svtail_tail_sum(const svtail_matrix* m, size_t theta, double* out);
SVTAIL_API int svtail_frobenius_norm(const svtail_matrix* m, double* out);

/* Model persistence: text format with a "<rows> <cols>" header, one line per
 * row, '#' comment lines ignored; values round-trip bit-for-bit. comments
 * (n_comments strings, may be NULL when none) are written as leading '#'
 * lines. */
SVTAIL_API int svtail_model_save(const svtail_matrix* m, const char* path,
                                 const char* const* comments, size_t n_comments);
SVTAIL_API int svtail_model_load(const char* path, svtail_matrix** out);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */
/* ------------------------------------------------------------------ */

typedef struct svtail_dataset svtail_dataset;

typedef struct svtail_stats_result {
    size_t n;
    size_t d;
    size_t l;
    double cardinality; /* mean relevant labels per example */
    double density;     /* cardinality / l */
    size_t distinct;    /* distinct label rows */
} svtail_stats_result;

/* Loads a (dense or sparse) multi-label ARFF file. label_count attributes at
 * the end (labels_at_end nonzero) or the start become the labels.
 * xml_label_path may be NULL; when given it names a label-list XML file
 * whose <label name="..."/> entries select the label attributes by name
 * instead (label_count 0 then means "take the count from the XML"). */
SVTAIL_API int svtail_dataset_load_arff(const char* path, size_t label_count,
                                        int labels_at_end, const char* xml_label_path,
                                        svtail_dataset** out);
SVTAIL_API void svtail_dataset_free(svtail_dataset* ds);
SVTAIL_API size_t svtail_dataset_rows(const svtail_dataset* ds);
SVTAIL_API size_t svtail_dataset_features_count(const svtail_dataset* ds);
SVTAIL_API size_t svtail_dataset_labels_count(const svtail_dataset* ds);
/* Name of label column idx; NULL if idx is out of range. The pointer stays
 * valid while ds is alive. */
SVTAIL_API const char* svtail_dataset_label_name(const svtail_dataset* ds, size_t idx);
/* Fresh copies of the feature / label blocks. */
SVTAIL_API int svtail_dataset_features(const svtail_dataset* ds, svtail_matrix** out);
SVTAIL_API int svtail_dataset_labels(const svtail_dataset* ds, svtail_matrix** out);
/* Row-wise union of two datasets with identical attribute names. */
SVTAIL_API int svtail_dataset_merge(const svtail_dataset* a, const svtail_dataset* b,
                                    svtail_dataset** out);
/* Rows [start, start+count) as a new dataset. */
SVTAIL_API int svtail_dataset_slice(const svtail_dataset* ds, size_t start,
                                    size_t count, svtail_dataset** out);
SVTAIL_API int svtail_dataset_stats(const svtail_dataset* ds, svtail_stats_result* out);
/* Writes the dataset as dense ARFF (labels last, declared {0,1}). */
SVTAIL_API int svtail_dataset_save_arff(const svtail_dataset* ds, const char* path,
                                        const char* relation);

/* Planted low-rank instance: X standard normal, W* = A B^T of the given
 * rank, labels thresholded at each row's median score. Deterministic in
 * seed. Either out pointer may be NULL if that output is not wanted. */
SVTAIL_API int svtail_synth_low_rank(size_t n, size_t d, size_t l, size_t rank,
                                     double noise, unsigned long long seed,
                                     svtail_dataset** ds_out,
                                     svtail_matrix** w_star_out);

/* ------------------------------------------------------------------ */
/* Training                                                            */
/* ------------------------------------------------------------------ */

enum {
    SVTAIL_REG_TAIL = 0,      /* sum of singular values after the first theta */
    SVTAIL_REG_TRACE = 1,     /* sum of all singular values */
    SVTAIL_REG_FROBENIUS = 2, /* squared Frobenius norm */
    SVTAIL_REG_NONE = 3
};

typedef struct svtail_solver_config {
    int regularizer; /* SVTAIL_REG_* */
    size_t theta;    /* used by SVTAIL_REG_TAIL */
    double c;        /* penalty weight, >= 0 */
    double t0;       /* initial step parameter; 0 selects 2*sigma_max(X)^2 */
    double gamma;    /* step growth factor, > 1 */
    size_t max_iters;
    double rel_tol;  /* relative objective-change stopping threshold */
} svtail_solver_config;

/* Fills in the documented defaults: tail regularizer, theta 0, c 1, t0 auto,
 * gamma 1.1, max_iters 500, rel_tol 1e-6. */
SVTAIL_API void svtail_solver_config_default(svtail_solver_config* config);

typedef struct svtail_fit_result svtail_fit_result;

/* Proximal-gradient fit of y (n x L) against x (n x d). w0 may be NULL for
 * a zero start. */
SVTAIL_API int svtail_fit(const svtail_matrix* x, const svtail_matrix* y,
                          const svtail_solver_config* config,
                          const svtail_matrix* w0, svtail_fit_result** out);
SVTAIL_API void svtail_fit_result_free(svtail_fit_result* r);
SVTAIL_API int svtail_fit_result_model(const svtail_fit_result* r, svtail_matrix** out);
SVTAIL_API size_t svtail_fit_result_iterations(const svtail_fit_result* r);
/* 1 if the relative-change stopping rule fired, 0 if max_iters ran out. */
SVTAIL_API int svtail_fit_result_converged(const svtail_fit_result* r);
/* Number of objective-history entries (iterations + 1; entry 0 is the
 * initial iterate). */
SVTAIL_API size_t svtail_fit_result_trace_len(const svtail_fit_result* r);
/* Objective, data-fit, and penalty value (without the weight c) at history
 * entry idx. Any out pointer may be NULL. */
SVTAIL_API int svtail_fit_result_trace_entry(const svtail_fit_result* r, size_t idx,
                                             double* objective, double* loss,
                                             double* penalty);

/* Exact ridge solution argmin ||y - x w||_F^2 + c ||w||_F^2, c > 0. */
SVTAIL_API int svtail_ridge_closed_form(const svtail_matrix* x, const svtail_matrix* y,
                                        double c, svtail_matrix** out);
/* Score matrix x * w. */
SVTAIL_API int svtail_predict(const svtail_matrix* w, const svtail_matrix* x,
                              svtail_matrix** out);
/* Rounds frac * l to the nearest integer, clamped to [0, min(d, l)]. */
SVTAIL_API int svtail_theta_from_fraction(double frac, size_t d, size_t l,
                                          size_t* out);

/* ------------------------------------------------------------------ */
/* Evaluation                                                          */
/* ------------------------------------------------------------------ */

typedef struct svtail_metric_result {
    double value;
    size_t skipped_rows; /* rows on which the metric is undefined */
} svtail_metric_result;

/* Scores and labels must have identical shapes; labels are 0/1. */
SVTAIL_API int svtail_hamming_loss(const svtail_matrix* scores,
                                   const svtail_matrix* labels,
                                   svtail_metric_result* out);
SVTAIL_API int svtail_top_k_accuracy(const svtail_matrix* scores,
                                     const svtail_matrix* labels, size_t k,
                                     svtail_metric_result* out);
SVTAIL_API int svtail_average_auc(const svtail_matrix* scores,
                                  const svtail_matrix* labels,
                                  svtail_metric_result* out);
SVTAIL_API int svtail_average_precision(const svtail_matrix* scores,
                                        const svtail_matrix* labels,
                                        svtail_metric_result* out);

/* ------------------------------------------------------------------ */
/* Complexity bounds                                                   */
/* ------------------------------------------------------------------ */

typedef struct svtail_bound_report {
    double trace;             /* trace norm of w */
    double tail_sum;          /* tail sum of w at theta */
    double trace_bound_value; /* trace / sqrt(n) */
    double local_rc_value;    /* r sqrt(theta/n) + tail_sum / sqrt(n) */
    double global_gap;        /* 4 R + sqrt(2 ln(2/delta) / n), R = trace bound */
    double local_gap;         /* 8 R + sqrt(8 r ln(2/delta)/n) + 3 ln(2/delta)/n */
} svtail_bound_report;

SVTAIL_API int svtail_bound_report_compute(const svtail_matrix* w, size_t n,
                                           double delta, double r, size_t theta,
                                           svtail_bound_report* out);

/* ------------------------------------------------------------------ */
/* Completion demonstration                                            */
/* ------------------------------------------------------------------ */

enum {
    SVTAIL_NORM_TRACE = 0,
    SVTAIL_NORM_TAIL = 1
};

typedef struct svtail_surface svtail_surface;

/* The bundled 3x4 demonstration matrix with two unknown entries. */
SVTAIL_API int svtail_demo_matrix(svtail_matrix** out);
/* Norm surface of the demonstration problem over [lo, hi]^2. */
SVTAIL_API int svtail_demo_surface(int norm_kind, size_t theta, double lo, double hi,
                                   double step, svtail_surface** out);
SVTAIL_API void svtail_surface_free(svtail_surface* s);
SVTAIL_API size_t svtail_surface_size(const svtail_surface* s);
SVTAIL_API int svtail_surface_point(const svtail_surface* s, size_t idx, double* v1,
                                    double* v2, double* norm);
/* Grid search with local refinement; values_out receives the two hole
 * values, sigma_out the three singular values at the argmin. */
SVTAIL_API int svtail_demo_minimize(int norm_kind, size_t theta, double lo, double hi,
                                    double coarse_step, size_t refine_rounds,
                                    double values_out[2], double* norm_out,
                                    double sigma_out[3]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SVTAIL_H */
