/*
 * actdate: activity date estimation for timestamped interaction networks.
 *
 * C interface over the C++ core. Objects are opaque handles created by
 * actdate_*_create / actdate_*_run style functions and released with the
 * matching *_destroy. Every fallible call returns an actdate_status; on
 * failure actdate_last_error() describes the problem for the calling thread.
 * Vertex ids are 0-based, dates are in years.
 */
#ifndef ACTDATE_ACTDATE_H
#define ACTDATE_ACTDATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ACTDATE_BUILDING)
#    define ACTDATE_API __declspec(dllexport)
#  else
#    define ACTDATE_API __declspec(dllimport)
#  endif
#else
#  define ACTDATE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum actdate_status {
    ACTDATE_OK = 0,
    ACTDATE_ERR_INVALID_ARGUMENT = 1, /* bad parameter, null handle, size mismatch */
    ACTDATE_ERR_IO = 2,               /* file could not be opened or written */
    ACTDATE_ERR_PARSE = 3,            /* malformed input file */
    ACTDATE_ERR_FIT = 4,              /* optimizer could not take an ascent step */
    ACTDATE_ERR_INTERNAL = 5
} actdate_status;

typedef struct actdate_graph actdate_graph;
typedef struct actdate_fit actdate_fit;
typedef struct actdate_sim actdate_sim;
typedef struct actdate_experiment actdate_experiment;
typedef struct actdate_curve actdate_curve;

typedef struct actdate_params {
    double alpha;
    double beta;  /* years^-2 */
    double sigma; /* years */
} actdate_params;

typedef struct actdate_fit_config {
    size_t max_iterations;
    double relative_tolerance;
    double initial_step;
    double armijo_c;
    double backtracking_factor;
    size_t max_backtracks;
    double epsilon_init;
    double span_init;
    double sigma_init;
} actdate_fit_config;

typedef enum actdate_stop_reason {
    ACTDATE_STOP_TOLERANCE = 0,
    ACTDATE_STOP_STATIONARY = 1,
    ACTDATE_STOP_LINE_SEARCH = 2,
    ACTDATE_STOP_MAX_ITERATIONS = 3,
    ACTDATE_STOP_DEGENERATE = 4 /* likelihood unbounded; last finite iterate kept */
} actdate_stop_reason;

typedef struct actdate_fit_summary {
    actdate_params params;
    double initial_log_likelihood;
    double final_log_likelihood;
    size_t iterations;
    int converged;
    actdate_stop_reason stop_reason;
} actdate_fit_summary;

typedef enum actdate_date_model { ACTDATE_DATES_GAUSSIAN = 0, ACTDATE_DATES_UNIFORM = 1 } actdate_date_model;

typedef struct actdate_sim_config {
    size_t n;
    double z_low;
    double z_high;
    double target_density;
    double life_span;
    double epsilon;
    double sigma;
    actdate_date_model date_model;
    double rewire_fraction;
    uint64_t seed;
} actdate_sim_config;

typedef struct actdate_sim_info {
    actdate_params params_true;
    size_t num_vertices;
    size_t num_edges;
    double edges_per_vertex;
    int accepted;
    size_t rewire_skipped;
} actdate_sim_info;

typedef enum actdate_scenario {
    ACTDATE_SCENARIO_IDEAL = 0,
    ACTDATE_SCENARIO_UNIFORM = 1,
    ACTDATE_SCENARIO_REWIRED = 2
} actdate_scenario;

typedef struct actdate_experiment_config {
    actdate_scenario scenario;
    size_t replicates;
    double density_low;
    double density_high;
    double rewire_fraction;
    uint64_t seed_base;
    size_t threads; /* 0: hardware concurrency */
    actdate_sim_config base; /* target_density, date_model, rewire_fraction and seed are ignored */
} actdate_experiment_config;

typedef struct actdate_record {
    actdate_scenario scenario;
    double rewire_fraction;
    double target_density;
    uint64_t seed;
    size_t n_lcc;
    size_t edges;
    double edges_per_vertex;
    double mse_local;
    double mse_model;
    double improvement;
    int converged;
    int accepted;
} actdate_record;

/* Errors and version */
ACTDATE_API const char* actdate_last_error(void);
ACTDATE_API const char* actdate_version(void);

/* Model */
ACTDATE_API double actdate_connection_probability(double zi, double zj, const actdate_params* params);
ACTDATE_API double actdate_date_log_density(double date, double zi, double zj, double sigma);
ACTDATE_API actdate_status actdate_alpha_for_density(double density, double* alpha);
ACTDATE_API actdate_status actdate_beta_for_span(double alpha, double span, double epsilon, double* beta);

/* Graphs */
ACTDATE_API actdate_status actdate_graph_create(size_t n, const size_t* src, const size_t* dst, const double* dates,
                                                size_t num_edges, actdate_graph** out);
ACTDATE_API actdate_status actdate_graph_read_csv(const char* path, int compact_ids, actdate_graph** out);
ACTDATE_API actdate_status actdate_graph_parse_csv(const char* text, size_t length, int compact_ids,
                                                   actdate_graph** out);
ACTDATE_API actdate_status actdate_graph_write_csv(const actdate_graph* graph, const char* path);
ACTDATE_API size_t actdate_graph_num_vertices(const actdate_graph* graph);
ACTDATE_API size_t actdate_graph_num_edges(const actdate_graph* graph);
ACTDATE_API actdate_status actdate_graph_edge(const actdate_graph* graph, size_t k, size_t* u, size_t* v,
                                              double* date);
/* File id of a vertex; differs from the vertex index only for compacted ids. */
ACTDATE_API actdate_status actdate_graph_file_id(const actdate_graph* graph, size_t vertex, size_t* id);
ACTDATE_API void actdate_graph_destroy(actdate_graph* graph);

ACTDATE_API actdate_status actdate_log_likelihood(const actdate_graph* graph, const double* z, size_t n,
                                                  const actdate_params* params, double* value);
/* grad_z has n entries; grad_params receives d/dalpha, d/dbeta, d/dsigma. */
ACTDATE_API actdate_status actdate_log_likelihood_gradient(const actdate_graph* graph, const double* z, size_t n,
                                                           const actdate_params* params, double* grad_z,
                                                           actdate_params* grad_params);

/* Estimation */
ACTDATE_API void actdate_fit_config_default(actdate_fit_config* config);
ACTDATE_API actdate_status actdate_local_average(const actdate_graph* graph, double* z, size_t n);
ACTDATE_API actdate_status actdate_default_params(const actdate_graph* graph, const actdate_fit_config* config,
                                                  actdate_params* params);
/* init_z (n entries) and init_params may be NULL. */
ACTDATE_API actdate_status actdate_fit_run(const actdate_graph* graph, const actdate_fit_config* config,
                                           const double* init_z, size_t n, const actdate_params* init_params,
                                           actdate_fit** out);
ACTDATE_API actdate_status actdate_fit_get_summary(const actdate_fit* fit, actdate_fit_summary* summary);
ACTDATE_API actdate_status actdate_fit_get_z(const actdate_fit* fit, double* z, size_t n);
ACTDATE_API size_t actdate_fit_trace_length(const actdate_fit* fit);
ACTDATE_API actdate_status actdate_fit_get_trace(const actdate_fit* fit, double* trace, size_t length);
ACTDATE_API actdate_status actdate_fit_write_trace(const actdate_fit* fit, const char* path);
ACTDATE_API void actdate_fit_destroy(actdate_fit* fit);

/* Writes "node,z_local,z_model" with one row per vertex; ids may be NULL
 * (rows labelled 0..n-1). */
ACTDATE_API actdate_status actdate_write_node_estimates(const char* path, const size_t* ids, const double* z_local,
                                                        const double* z_model, size_t n);

/* Simulation */
ACTDATE_API void actdate_sim_config_default(actdate_sim_config* config);
ACTDATE_API actdate_status actdate_simulate(const actdate_sim_config* config, actdate_sim** out);
ACTDATE_API actdate_status actdate_sim_get_info(const actdate_sim* sim, actdate_sim_info* info);
/* Borrowed; valid until the simulation handle is destroyed. */
ACTDATE_API const actdate_graph* actdate_sim_graph(const actdate_sim* sim);
ACTDATE_API actdate_status actdate_sim_get_z_true(const actdate_sim* sim, double* z, size_t n);
ACTDATE_API actdate_status actdate_sim_get_original_ids(const actdate_sim* sim, size_t* ids, size_t n);
/* Writes "node,z_true". */
ACTDATE_API actdate_status actdate_sim_write_truth(const actdate_sim* sim, const char* path);
ACTDATE_API void actdate_sim_destroy(actdate_sim* sim);

/* Experiments */
ACTDATE_API void actdate_experiment_config_default(actdate_experiment_config* config);
ACTDATE_API actdate_status actdate_experiment_run(const actdate_experiment_config* config,
                                                  const actdate_fit_config* fit_config, actdate_experiment** out);
ACTDATE_API size_t actdate_experiment_size(const actdate_experiment* experiment);
ACTDATE_API actdate_status actdate_experiment_get_record(const actdate_experiment* experiment, size_t index,
                                                         actdate_record* record);
ACTDATE_API actdate_status actdate_experiment_write_records(const actdate_experiment* experiment, const char* path);
/* Smooths improvement against edges per vertex over accepted records.
 * bandwidth <= 0 selects Silverman's rule; exclude_below filters records
 * whose improvement is lower when use_floor is nonzero. */
ACTDATE_API actdate_status actdate_experiment_smooth(const actdate_experiment* experiment, double bandwidth,
                                                     int use_floor, double exclude_below, actdate_curve** out);
ACTDATE_API void actdate_experiment_destroy(actdate_experiment* experiment);

/* Kernel smoothing. grid may be NULL (200 points over the data range);
 * bandwidth <= 0 selects Silverman's rule. */
ACTDATE_API actdate_status actdate_kernel_smooth(const double* xs, const double* ys, size_t count, double bandwidth,
                                                 const double* grid, size_t grid_length, actdate_curve** out);
ACTDATE_API size_t actdate_curve_length(const actdate_curve* curve);
ACTDATE_API double actdate_curve_bandwidth(const actdate_curve* curve);
/* *defined is 0 where every kernel weight vanished; *value is then NaN. */
ACTDATE_API actdate_status actdate_curve_point(const actdate_curve* curve, size_t k, double* x, double* value,
                                               int* defined);
/* *found is 0 when the curve never settles non-negative. */
ACTDATE_API actdate_status actdate_curve_positive_crossing(const actdate_curve* curve, double* x, int* found);
ACTDATE_API size_t actdate_curve_samples(const actdate_curve* curve);
ACTDATE_API actdate_status actdate_curve_write_csv(const actdate_curve* curve, const char* path);
ACTDATE_API void actdate_curve_destroy(actdate_curve* curve);

#ifdef __cplusplus
}
#endif

#endif /* ACTDATE_ACTDATE_H */
