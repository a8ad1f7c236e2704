// Copyright 2026 The qswiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to qswiso: omega-spectra of quantum stochastic walks on graphs,
 * counting statistics of an auxiliary edge, reconstruction of the spectrum
 * from cumulants, quantum-jump simulation and cospectral-pair search.
 *
 * All handles are opaque and owned by the caller once returned; release
 * them with the matching *_free function. Functions return a qsw_status;
 * on failure qsw_last_error() describes the problem for the calling
 * thread. Vertex indices are 0-based. */

#ifndef QSWISO_QSWISO_H
#define QSWISO_QSWISO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QSW_API __declspec(dllexport)
#else
#define QSW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsw_status {
  QSW_OK = 0,
  QSW_ERR_INVALID_ARGUMENT = 1,
  QSW_ERR_PARSE = 2,
  QSW_ERR_DISCONNECTED = 3,
  QSW_ERR_SIZE_LIMIT = 4,
  QSW_ERR_NOT_CONVERGED = 5,
  QSW_ERR_SINGULAR = 6,
  QSW_ERR_BRANCH_CROSSING = 7,
  QSW_ERR_NUMERICAL = 8,
  QSW_ERR_IO = 9,
  QSW_ERR_INTERNAL = 10
} qsw_status;

QSW_API const char* qsw_version(void);
QSW_API const char* qsw_last_error(void);
QSW_API const char* qsw_status_name(qsw_status status);
/* Nonzero for errors caused by the input rather than by the numerics. */
QSW_API int qsw_status_is_input_error(qsw_status status);

/* ---- graphs ---------------------------------------------------------- */

typedef struct qsw_graph qsw_graph;

QSW_API qsw_status qsw_graph_from_graph6(const char* line, qsw_graph** out);
/* edges holds edge_count pairs (2 * edge_count ints). */
QSW_API qsw_status qsw_graph_from_edges(int n, const int* edges, size_t edge_count, qsw_graph** out);
/* path, cycle, complete, star (param = n), shrikhande, rook4. */
QSW_API qsw_status qsw_graph_named(const char* name, int param, qsw_graph** out);
QSW_API qsw_status qsw_graph_clone(const qsw_graph* g, qsw_graph** out);
QSW_API void qsw_graph_free(qsw_graph* g);

QSW_API int qsw_graph_order(const qsw_graph* g);
QSW_API size_t qsw_graph_edge_count(const qsw_graph* g);
QSW_API qsw_status qsw_graph_edges(const qsw_graph* g, int* out, size_t capacity_pairs);
QSW_API int qsw_graph_has_edge(const qsw_graph* g, int i, int j);
/* Writes a NUL-terminated graph6 string; *needed receives the size including NUL.
 * buf == NULL only queries the size. */
QSW_API qsw_status qsw_graph_to_graph6(const qsw_graph* g, char* buf, size_t capacity, size_t* needed);
/* image[k] is the new label of vertex k. */
QSW_API qsw_status qsw_graph_permute(const qsw_graph* g, const int* image, qsw_graph** out);
QSW_API qsw_status qsw_graph_isomorphic(const qsw_graph* a, const qsw_graph* b, int* out);

/* ---- spectra --------------------------------------------------------- */

typedef struct qsw_spectrum qsw_spectrum;

QSW_API qsw_status qsw_omega_spectrum(const qsw_graph* g, double omega, qsw_spectrum** out);
/* Closed forms: omega = 0 (classical) and omega = 1 (coherent). */
QSW_API qsw_status qsw_closed_form_spectrum(const qsw_graph* g, int coherent, qsw_spectrum** out);
QSW_API void qsw_spectrum_free(qsw_spectrum* s);
QSW_API size_t qsw_spectrum_size(const qsw_spectrum* s);
/* Interleaved re, im; sorted by real then imaginary part. */
QSW_API qsw_status qsw_spectrum_values(const qsw_spectrum* s, double* re_im, size_t capacity_pairs);
QSW_API size_t qsw_spectrum_count_distinct(const qsw_spectrum* s, double tol);
QSW_API double qsw_spectrum_max_abs(const qsw_spectrum* s);
QSW_API double qsw_spectral_distance(const qsw_spectrum* a, const qsw_spectrum* b);

/* omega * ||L_qm||_F + (1 - omega) * ||L_cl||_F */
QSW_API qsw_status qsw_radius_bound(const qsw_graph* g, double omega, double* out);

#define QSW_DEFAULT_TAU 1e-7

typedef struct qsw_comparison {
  double omega;
  double delta;
  double tau;
  double threshold; /* tau * n^2 */
  int distinguished;
} qsw_comparison;

/* tau <= 0 selects QSW_DEFAULT_TAU. */
QSW_API qsw_status qsw_compare(const qsw_graph* a, const qsw_graph* b, double omega, double tau,
                               qsw_comparison* out);
/* count points from lo to hi inclusive; outputs have count entries. */
QSW_API qsw_status qsw_sweep(const qsw_graph* a, const qsw_graph* b, double lo, double hi, int count,
                             double* omega_out, double* delta_out);

/* ---- counting statistics --------------------------------------------- */

#define QSW_DEFAULT_EPSILON 1e-3

typedef struct qsw_aux_edge {
  int from;
  int to;
  double epsilon;
} qsw_aux_edge;

typedef enum qsw_cumulant_method { QSW_CUMULANTS_FORWARD = 0, QSW_CUMULANTS_CONTOUR = 1 } qsw_cumulant_method;

/* c_1..c_order of the dominant eigenvalue into out; consistency (may be
 * NULL) receives the radius check for the contour method, 0 otherwise. */
QSW_API qsw_status qsw_cumulants(const qsw_graph* g, double omega, qsw_aux_edge aux, int order,
                                 qsw_cumulant_method method, double* out, double* consistency);
/* Steady-state populations of the chi = 0 generator with the aux edge; out has n entries. */
QSW_API qsw_status qsw_steady_state(const qsw_graph* g, double omega, qsw_aux_edge aux, double* out);

/* ---- reconstruction -------------------------------------------------- */

typedef enum qsw_precision { QSW_PRECISION_EXTENDED = 0, QSW_PRECISION_DEEP = 1 } qsw_precision;

typedef struct qsw_reconstruct_options {
  qsw_cumulant_method source;
  qsw_precision precision;
  int order;            /* 0 selects 2(n^2 - 1) */
  int visible_fallback; /* recover the chi-dependent factor if the system is singular */
} qsw_reconstruct_options;

QSW_API qsw_reconstruct_options qsw_reconstruct_defaults(void);

typedef struct qsw_reconstruction qsw_reconstruction;

QSW_API qsw_status qsw_reconstruct(const qsw_graph* g, double omega, qsw_aux_edge aux,
                                   const qsw_reconstruct_options* options, qsw_reconstruction** out);
QSW_API void qsw_reconstruction_free(qsw_reconstruction* r);
QSW_API int qsw_reconstruction_degree(const qsw_reconstruction* r);
/* degree + 1 coefficients each, ascending powers. */
QSW_API const double* qsw_reconstruction_q(const qsw_reconstruction* r);
QSW_API const double* qsw_reconstruction_qprime(const qsw_reconstruction* r);
QSW_API size_t qsw_reconstruction_cumulant_count(const qsw_reconstruction* r);
QSW_API const double* qsw_reconstruction_cumulants(const qsw_reconstruction* r);
QSW_API double qsw_reconstruction_residual(const qsw_reconstruction* r);
QSW_API double qsw_reconstruction_condition(const qsw_reconstruction* r);
QSW_API double qsw_reconstruction_delta(const qsw_reconstruction* r);
QSW_API int qsw_reconstruction_partial(const qsw_reconstruction* r);
QSW_API qsw_status qsw_reconstruction_spectrum(const qsw_reconstruction* r, qsw_spectrum** out);
QSW_API qsw_status qsw_reconstruction_direct(const qsw_reconstruction* r, qsw_spectrum** out);

/* ---- trajectories ---------------------------------------------------- */

typedef struct qsw_simulate_params {
  double omega;
  qsw_aux_edge aux;
  double dt;
  int64_t windows;
  double burn_in; /* negative selects 10 / spectral gap */
  uint64_t seed;
  int64_t stream_windows; /* 0 selects 256 */
  int diagnostics;
} qsw_simulate_params;

typedef struct qsw_trajectory_diagnostics {
  int64_t jumps;
  double max_survival_error;
  double max_rate_error;
  double max_offbasis_weight;
} qsw_trajectory_diagnostics;

typedef struct qsw_count_record qsw_count_record;

QSW_API qsw_status qsw_default_burn_in(const qsw_graph* g, double omega, qsw_aux_edge aux, double* out);
QSW_API qsw_status qsw_simulate(const qsw_graph* g, const qsw_simulate_params* params, qsw_count_record** out);
QSW_API void qsw_count_record_free(qsw_count_record* r);
QSW_API int64_t qsw_count_record_windows(const qsw_count_record* r);
QSW_API const int64_t* qsw_count_record_counts(const qsw_count_record* r);
QSW_API double qsw_count_record_burn_in(const qsw_count_record* r);
QSW_API qsw_trajectory_diagnostics qsw_count_record_diagnostics(const qsw_count_record* r);

/* k-statistics / dt and their standard errors; order in 1..4. */
QSW_API qsw_status qsw_k_statistics(const int64_t* counts, size_t size, double dt, int order,
                                    double* values, double* std_errors);

typedef struct qsw_variance_scaling {
  double exponent;
  int within_bounds;
} qsw_variance_scaling;

/* variances receives one entry per size. burn_in < 0 selects the default. */
QSW_API qsw_status qsw_variance_scaling_check(const qsw_graph* g, double omega, qsw_aux_edge aux, int k,
                                              const int64_t* sizes, size_t size_count, int batches, double dt,
                                              uint64_t seed, double burn_in, double* variances,
                                              qsw_variance_scaling* out);

/* ---- catalogs and search --------------------------------------------- */

typedef struct qsw_catalog qsw_catalog;

/* Connected graphs on exactly n vertices, or on 1..n when up_to is nonzero. */
QSW_API qsw_status qsw_catalog_generate(int n, int up_to, qsw_catalog** out);
/* One graph6 string per line; blank lines ignored. */
QSW_API qsw_status qsw_catalog_parse(const char* text, qsw_catalog** out);
QSW_API void qsw_catalog_free(qsw_catalog* c);
QSW_API size_t qsw_catalog_size(const qsw_catalog* c);
QSW_API const char* qsw_catalog_graph6(const qsw_catalog* c, size_t index);
QSW_API qsw_status qsw_catalog_graph(const qsw_catalog* c, size_t index, qsw_graph** out);

#define QSW_INVARIANT_A 1u
#define QSW_INVARIANT_L 2u
#define QSW_INVARIANT_Q 4u
#define QSW_INVARIANT_ABAR 8u
#define QSW_INVARIANT_ALL 15u

typedef struct qsw_search_options {
  unsigned invariants; /* mask of QSW_INVARIANT_* */
  double omega;
  double tau; /* <= 0 selects QSW_DEFAULT_TAU */
  int all_pairs;
  double containment_factor;
  size_t max_graphs;
  int allow_oversize;
} qsw_search_options;

QSW_API qsw_search_options qsw_search_defaults(void);

typedef struct qsw_pair {
  size_t first;
  size_t second;
  const char* graph6_first;
  const char* graph6_second;
  unsigned ties; /* mask of QSW_INVARIANT_* */
  int same_degrees;
  double delta;
  int distinguished;
} qsw_pair;

typedef struct qsw_class_counts {
  int64_t pairs;
  int64_t by_adjacency;
  int64_t by_laplacian;
  int64_t by_omega;
  int64_t by_adjacency_or_laplacian;
  int64_t omega_only;
  int64_t indistinguished;
} qsw_class_counts;

typedef struct qsw_search_report qsw_search_report;

QSW_API qsw_status qsw_search(const qsw_catalog* c, const qsw_search_options* options, qsw_search_report** out);
QSW_API void qsw_search_report_free(qsw_search_report* r);
QSW_API size_t qsw_search_pair_count(const qsw_search_report* r);
QSW_API qsw_pair qsw_search_pair(const qsw_search_report* r, size_t index);
QSW_API size_t qsw_search_violation_count(const qsw_search_report* r);
QSW_API qsw_pair qsw_search_violation(const qsw_search_report* r, size_t index);
QSW_API size_t qsw_search_duplicate_count(const qsw_search_report* r);
QSW_API qsw_status qsw_search_duplicate(const qsw_search_report* r, size_t index, size_t* first, size_t* second);
/* Returns 1 and fills out when the report classified all pairs. */
QSW_API int qsw_search_classes(const qsw_search_report* r, qsw_class_counts* out);

/* ---- misc ------------------------------------------------------------ */

/* Worker threads used by parallel drivers (QSWISO_THREADS caps it). */
QSW_API int qsw_thread_count(void);

#ifdef __cplusplus
}
#endif

#endif /* QSWISO_QSWISO_H */
