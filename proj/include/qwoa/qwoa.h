/* C interface to the QWOA dynamical-Lie-algebra and simulation library.
 *
 * All objects are opaque handles created by qwoa_*_create/compute calls and
 * released with the matching qwoa_*_free. Every fallible call returns a
 * qwoa_status; on failure qwoa_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with qwoa_string_free.
 */
#ifndef QWOA_QWOA_H
#define QWOA_QWOA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define QWOA_API __declspec(dllexport)
#else
#  define QWOA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwoa_status {
  QWOA_OK = 0,
  QWOA_ERR_INVALID_ARGUMENT = 1, /* null pointer or unusable buffer */
  QWOA_ERR_DOMAIN = 2,
  QWOA_ERR_RESOURCE = 3,
  QWOA_ERR_INTERNAL = 4
} qwoa_status;

typedef enum qwoa_sense { QWOA_MINIMIZE = 0, QWOA_MAXIMIZE = 1 } qwoa_sense;
typedef enum qwoa_graph_family {
  QWOA_GRAPH_CYCLE = 0,
  QWOA_GRAPH_CHAIN = 1,
  QWOA_GRAPH_COMPLETE = 2
} qwoa_graph_family;
typedef enum qwoa_family_kind {
  QWOA_FAMILY_SEARCH = 0,
  QWOA_FAMILY_MAXCUT = 1,
  QWOA_FAMILY_KDENSEST = 2
} qwoa_family_kind;

typedef struct qwoa_spectrum qwoa_spectrum;
typedef struct qwoa_graph qwoa_graph;
typedef struct qwoa_instance qwoa_instance;
typedef struct qwoa_lie_basis qwoa_lie_basis;

QWOA_API const char* qwoa_last_error(void);
QWOA_API const char* qwoa_version(void);
QWOA_API void qwoa_string_free(char* s);

/* ---- spectrum ---------------------------------------------------------- */

QWOA_API qwoa_status qwoa_spectrum_from_costs(const double* values, size_t count,
                                              qwoa_sense sense, double merge_tolerance,
                                              qwoa_spectrum** out);
QWOA_API qwoa_status qwoa_spectrum_from_classes(const double* costs,
                                                const uint64_t* multiplicities, size_t m,
                                                qwoa_sense sense, qwoa_spectrum** out);
QWOA_API qwoa_status qwoa_spectrum_from_json(const char* json, qwoa_spectrum** out);
QWOA_API qwoa_status qwoa_spectrum_to_json(const qwoa_spectrum* spec, char** out);
QWOA_API void qwoa_spectrum_free(qwoa_spectrum* spec);

QWOA_API size_t qwoa_spectrum_size(const qwoa_spectrum* spec);
QWOA_API uint64_t qwoa_spectrum_total(const qwoa_spectrum* spec);
QWOA_API qwoa_sense qwoa_spectrum_sense(const qwoa_spectrum* spec);
/* Copies m costs / multiplicities into caller buffers of length >= m. */
QWOA_API qwoa_status qwoa_spectrum_classes(const qwoa_spectrum* spec, double* costs,
                                           uint64_t* multiplicities, size_t capacity);
QWOA_API qwoa_status qwoa_spectrum_optimal_class(const qwoa_spectrum* spec, size_t* index,
                                                 uint64_t* count);

/* ---- problems ---------------------------------------------------------- */

/* edges holds 2 * edge_count vertex indices (u0, v0, u1, v1, ...). */
QWOA_API qwoa_status qwoa_graph_create(int n, const int* edges, size_t edge_count,
                                       qwoa_graph** out);
QWOA_API qwoa_status qwoa_graph_family_create(qwoa_graph_family family, int n,
                                              qwoa_graph** out);
QWOA_API qwoa_status qwoa_graph_read_file(const char* path, qwoa_graph** out);
QWOA_API void qwoa_graph_free(qwoa_graph* graph);
QWOA_API int qwoa_graph_vertex_count(const qwoa_graph* graph);
QWOA_API size_t qwoa_graph_edge_count(const qwoa_graph* graph);

QWOA_API qwoa_status qwoa_instance_search(uint64_t space_size, uint64_t marked,
                                          qwoa_instance** out);
QWOA_API qwoa_status qwoa_instance_maxcut(const qwoa_graph* graph, qwoa_instance** out);
QWOA_API qwoa_status qwoa_instance_kdensest(const qwoa_graph* graph, int k,
                                            qwoa_instance** out);
QWOA_API void qwoa_instance_free(qwoa_instance* inst);
QWOA_API uint64_t qwoa_instance_feasible_size(const qwoa_instance* inst);
/* Short label such as "maxcut:n=4:E=4". Caller frees. */
QWOA_API qwoa_status qwoa_instance_describe(const qwoa_instance* inst, char** out);

/* budget == 0 selects the default enumeration budget (2^22). */
QWOA_API qwoa_status qwoa_instance_spectrum(const qwoa_instance* inst, uint64_t budget,
                                            qwoa_spectrum** out);
QWOA_API qwoa_status qwoa_instance_count_optimal(const qwoa_instance* inst, uint64_t budget,
                                                 uint64_t* out);
QWOA_API uint64_t qwoa_binomial(int n, int k);

/* ---- simulation -------------------------------------------------------- */

typedef struct qwoa_sim_result {
  double loss;
  double success;
  double norm_squared;
} qwoa_sim_result;

/* Evolves p layers. amps (optional, may be NULL) receives 2*m doubles,
 * interleaved real/imaginary per class. target_cost is used when
 * has_target != 0; success is then the mass on classes at least as good. */
QWOA_API qwoa_status qwoa_simulate(const qwoa_spectrum* spec, const double* gammas,
                                   const double* times, size_t p, int has_target,
                                   double target_cost, qwoa_sim_result* result,
                                   double* amps, size_t amps_capacity);

/* Oracle: explicit-basis simulation. amps receives 2*|S'| doubles and costs
 * |S'| doubles in enumeration order. */
QWOA_API qwoa_status qwoa_dense_simulate(const qwoa_instance* inst, const double* gammas,
                                         const double* times, size_t p, double* amps,
                                         double* costs, size_t capacity, double* loss);

/* ---- dynamical Lie algebra --------------------------------------------- */

/* tol <= 0 is a domain error; pass 1e-9 for the default. */
QWOA_API qwoa_status qwoa_lie_closure(const qwoa_spectrum* spec, double tol,
                                      qwoa_lie_basis** out);
QWOA_API void qwoa_lie_basis_free(qwoa_lie_basis* basis);
QWOA_API size_t qwoa_lie_basis_dim(const qwoa_lie_basis* basis);
QWOA_API size_t qwoa_lie_basis_traceless_dim(const qwoa_lie_basis* basis);
QWOA_API double qwoa_lie_basis_orthonormality_error(const qwoa_lie_basis* basis);
QWOA_API qwoa_status qwoa_lie_basis_to_json(const qwoa_lie_basis* basis, char** out);

/* g-purity of alpha*iH_C + expand(B); block holds m*m complex entries,
 * row-major, interleaved real/imaginary. */
QWOA_API qwoa_status qwoa_g_purity(const qwoa_lie_basis* basis, double alpha,
                                   const double* block, size_t m, double* out);
QWOA_API qwoa_status qwoa_g_purity_generators(const qwoa_lie_basis* basis, double* cost_purity,
                                              double* cost_norm_sq, double* mixer_purity,
                                              double* mixer_norm_sq);

QWOA_API qwoa_status qwoa_dense_lie_closure(const qwoa_instance* inst, double tol, size_t* dim,
                                            size_t* traceless_dim);

/* ---- landscape --------------------------------------------------------- */

typedef struct qwoa_ranges {
  double gamma_lo, gamma_hi;
  double time_lo, time_hi;
} qwoa_ranges;

typedef struct qwoa_variance_estimate {
  double mean;
  double variance;
  double stderr_variance;
  uint64_t samples;
  int p;
  uint64_t seed;
} qwoa_variance_estimate;

/* Default ranges: gamma and t uniform on [-pi, pi]. */
QWOA_API qwoa_ranges qwoa_default_ranges(void);
QWOA_API qwoa_status qwoa_estimate_variance(const qwoa_spectrum* spec, int p, uint64_t samples,
                                            const qwoa_ranges* ranges, uint64_t seed,
                                            qwoa_variance_estimate* out);

typedef struct qwoa_family {
  qwoa_family_kind kind;
  qwoa_graph_family graph;
  double marked_fraction; /* search: |M| = max(1, round(f*N)) if marked_count == 0 */
  uint64_t marked_count;
  int k;
} qwoa_family;

typedef struct qwoa_scaling_row {
  int size;
  size_t m;
  uint64_t n;
  qwoa_variance_estimate estimate;
} qwoa_scaling_row;

/* rows must hold size_count entries. */
QWOA_API qwoa_status qwoa_scaling_report(const qwoa_family* family, const int* sizes,
                                         size_t size_count, int p, uint64_t samples,
                                         uint64_t seed, const qwoa_ranges* ranges,
                                         qwoa_scaling_row* rows, double* slope,
                                         double* slope_stderr);
QWOA_API qwoa_status qwoa_family_instance(const qwoa_family* family, int size,
                                          qwoa_instance** out);

/* ---- depth ------------------------------------------------------------- */

typedef struct qwoa_depth_options {
  int restarts;
  uint64_t seed;
  int has_target;
  double target_cost;
  uint64_t max_evaluations;
} qwoa_depth_options;

typedef struct qwoa_depth_result {
  int p;
  double best_success;
  int restarts_used;
  uint64_t evaluations;
} qwoa_depth_result;

QWOA_API qwoa_depth_options qwoa_default_depth_options(void);

/* gammas/times (optional) receive the p best angles. */
QWOA_API qwoa_status qwoa_best_success_at_depth(const qwoa_spectrum* spec, int p,
                                                const qwoa_depth_options* options,
                                                qwoa_depth_result* out, double* gammas,
                                                double* times);

/* scanned must hold p_max entries; *scanned_count receives how many depths
 * were tried and *depth the minimal depth, or 0 when not reached. */
QWOA_API qwoa_status qwoa_minimal_depth(const qwoa_spectrum* spec, double threshold, int p_max,
                                        const qwoa_depth_options* options, int* depth,
                                        qwoa_depth_result* scanned, size_t* scanned_count);

QWOA_API double qwoa_lower_bound_depth(const qwoa_spectrum* spec);

typedef struct qwoa_sampling_trials {
  double frequency;
  double closed_form;
  double sigma;
  uint64_t trials;
} qwoa_sampling_trials;

QWOA_API qwoa_status qwoa_random_sampling_trials(const qwoa_spectrum* spec, uint64_t budget,
                                                 uint64_t trials, uint64_t seed,
                                                 qwoa_sampling_trials* out);

#ifdef __cplusplus
}
#endif

#endif /* QWOA_QWOA_H */
