#include "actdate/actdate.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>

#include "actdate/csv_io.hpp"
#include "actdate/estimation.hpp"
#include "actdate/evaluation.hpp"
#include "actdate/model.hpp"
#include "actdate/simulation.hpp"

struct actdate_graph {
    actdate::TimestampedGraph graph;
    std::vector<std::size_t> file_ids;
};

struct actdate_fit {
    actdate::FitResult result;
};

struct actdate_sim {
    actdate::SimOutput out;
    actdate_graph graph;
};

struct actdate_experiment {
    std::vector<actdate::ExperimentRecord> records;
};

struct actdate_curve {
    actdate::SmoothedCurve curve;
    std::size_t samples = 0;
};

namespace {

thread_local std::string last_error;

actdate_status fail(actdate_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <class F>
actdate_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return ACTDATE_OK;
    } catch (const actdate::ParseError& e) {
        return fail(ACTDATE_ERR_PARSE, e.what());
    } catch (const actdate::FitError& e) {
        return fail(ACTDATE_ERR_FIT, e.what());
    } catch (const std::system_error& e) {
        return fail(ACTDATE_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ACTDATE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ACTDATE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ACTDATE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ACTDATE_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* what) {
    if (!condition)
        throw actdate::InvalidInput(what);
}

actdate::ModelParams to_cpp(const actdate_params& p) { return {p.alpha, p.beta, p.sigma}; }
actdate_params to_c(const actdate::ModelParams& p) { return {p.alpha, p.beta, p.sigma}; }

actdate::FitConfig to_cpp(const actdate_fit_config& c) {
    actdate::FitConfig f;
    f.max_iterations = c.max_iterations;
    f.relative_tolerance = c.relative_tolerance;
    f.initial_step = c.initial_step;
    f.armijo_c = c.armijo_c;
    f.backtracking_factor = c.backtracking_factor;
    f.max_backtracks = c.max_backtracks;
    f.epsilon_init = c.epsilon_init;
    f.span_init = c.span_init;
    f.sigma_init = c.sigma_init;
    return f;
}

actdate::SimConfig to_cpp(const actdate_sim_config& c) {
    actdate::SimConfig s;
    s.n = c.n;
    s.z_low = c.z_low;
    s.z_high = c.z_high;
    s.target_density = c.target_density;
    s.life_span = c.life_span;
    s.epsilon = c.epsilon;
    s.sigma = c.sigma;
    s.date_model = c.date_model == ACTDATE_DATES_UNIFORM ? actdate::DateModel::uniform : actdate::DateModel::gaussian;
    s.rewire_fraction = c.rewire_fraction;
    s.seed = c.seed;
    return s;
}

actdate_scenario to_c(actdate::Scenario s) {
    switch (s) {
        case actdate::Scenario::uniform: return ACTDATE_SCENARIO_UNIFORM;
        case actdate::Scenario::rewired: return ACTDATE_SCENARIO_REWIRED;
        case actdate::Scenario::ideal: break;
    }
    return ACTDATE_SCENARIO_IDEAL;
}

actdate::Scenario to_cpp(actdate_scenario s) {
    switch (s) {
        case ACTDATE_SCENARIO_IDEAL: return actdate::Scenario::ideal;
        case ACTDATE_SCENARIO_UNIFORM: return actdate::Scenario::uniform;
        case ACTDATE_SCENARIO_REWIRED: return actdate::Scenario::rewired;
    }
    throw actdate::InvalidInput("unknown scenario");
}

template <class Writer>
void write_file(const char* path, Writer&& writer) {
    require(path != nullptr, "null path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::system_error(errno, std::generic_category(), std::string("cannot open '") + path + "' for writing");
    writer(out);
    out.close();
    if (!out)
        throw std::system_error(EIO, std::generic_category(), std::string("error writing '") + path + "'");
}

actdate_graph* make_graph(actdate::ParsedEdgeList parsed) {
    return new actdate_graph{std::move(parsed.graph), std::move(parsed.file_ids)};
}

actdate::LatentDates dates_from(const double* z, std::size_t n) {
    require(z != nullptr || n == 0, "null latent date array");
    return actdate::LatentDates{std::vector<double>(z, z + n)};
}

}  // namespace

extern "C" {

const char* actdate_last_error(void) { return last_error.c_str(); }

const char* actdate_version(void) { return "0.1.0"; }

double actdate_connection_probability(double zi, double zj, const actdate_params* params) {
    if (params == nullptr)
        return std::numeric_limits<double>::quiet_NaN();
    return actdate::connection_probability(zi, zj, to_cpp(*params));
}

double actdate_date_log_density(double date, double zi, double zj, double sigma) {
    return actdate::date_log_density(date, zi, zj, sigma);
}

actdate_status actdate_alpha_for_density(double density, double* alpha) {
    return guarded([&] {
        require(alpha != nullptr, "null output");
        *alpha = actdate::alpha_for_density(density);
    });
}

actdate_status actdate_beta_for_span(double alpha, double span, double epsilon, double* beta) {
    return guarded([&] {
        require(beta != nullptr, "null output");
        *beta = actdate::beta_for_span(alpha, span, epsilon);
    });
}

actdate_status actdate_graph_create(size_t n, const size_t* src, const size_t* dst, const double* dates,
                                    size_t num_edges, actdate_graph** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        require(num_edges == 0 || (src && dst && dates), "null edge arrays");
        std::vector<actdate::Edge> edges(num_edges);
        for (std::size_t k = 0; k < num_edges; ++k)
            edges[k] = {src[k], dst[k], dates[k]};
        actdate::ParsedEdgeList parsed{actdate::TimestampedGraph(n, std::move(edges)), {}};
        parsed.file_ids.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            parsed.file_ids[i] = i;
        *out = make_graph(std::move(parsed));
    });
}

actdate_status actdate_graph_read_csv(const char* path, int compact_ids, actdate_graph** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = make_graph(actdate::read_edge_list(path, compact_ids != 0));
    });
}

actdate_status actdate_graph_parse_csv(const char* text, size_t length, int compact_ids, actdate_graph** out) {
    return guarded([&] {
        require((text != nullptr || length == 0) && out != nullptr, "null argument");
        std::istringstream in(std::string(text ? text : "", length));
        *out = make_graph(actdate::parse_edge_list(in, compact_ids != 0));
    });
}

actdate_status actdate_graph_write_csv(const actdate_graph* graph, const char* path) {
    return guarded([&] {
        require(graph != nullptr, "null graph");
        write_file(path, [&](std::ostream& os) { actdate::write_edge_list(os, graph->graph); });
    });
}

size_t actdate_graph_num_vertices(const actdate_graph* graph) { return graph ? graph->graph.num_vertices() : 0; }

size_t actdate_graph_num_edges(const actdate_graph* graph) { return graph ? graph->graph.num_edges() : 0; }

actdate_status actdate_graph_edge(const actdate_graph* graph, size_t k, size_t* u, size_t* v, double* date) {
    return guarded([&] {
        require(graph != nullptr && u && v && date, "null argument");
        require(k < graph->graph.num_edges(), "edge index out of range");
        const actdate::Edge& e = graph->graph.edge(k);
        *u = e.u;
        *v = e.v;
        *date = e.date;
    });
}

actdate_status actdate_graph_file_id(const actdate_graph* graph, size_t vertex, size_t* id) {
    return guarded([&] {
        require(graph != nullptr && id != nullptr, "null argument");
        require(vertex < graph->file_ids.size(), "vertex out of range");
        *id = graph->file_ids[vertex];
    });
}

void actdate_graph_destroy(actdate_graph* graph) { delete graph; }

actdate_status actdate_log_likelihood(const actdate_graph* graph, const double* z, size_t n,
                                      const actdate_params* params, double* value) {
    return guarded([&] {
        require(graph && params && value, "null argument");
        const actdate::ModelParams p = to_cpp(*params);
        p.validate();
        *value = actdate::log_likelihood(graph->graph, dates_from(z, n), p);
    });
}

actdate_status actdate_log_likelihood_gradient(const actdate_graph* graph, const double* z, size_t n,
                                               const actdate_params* params, double* grad_z,
                                               actdate_params* grad_params) {
    return guarded([&] {
        require(graph && params && grad_params && (grad_z || n == 0), "null argument");
        const actdate::ModelParams p = to_cpp(*params);
        p.validate();
        const auto g = actdate::log_likelihood_gradient(graph->graph, dates_from(z, n), p);
        std::copy(g.z.begin(), g.z.end(), grad_z);
        *grad_params = {g.alpha, g.beta, g.sigma};
    });
}

void actdate_fit_config_default(actdate_fit_config* config) {
    if (config == nullptr)
        return;
    const actdate::FitConfig f;
    *config = {f.max_iterations, f.relative_tolerance, f.initial_step, f.armijo_c,   f.backtracking_factor,
               f.max_backtracks, f.epsilon_init,       f.span_init,    f.sigma_init};
}

actdate_status actdate_local_average(const actdate_graph* graph, double* z, size_t n) {
    return guarded([&] {
        require(graph && z, "null argument");
        require(n == graph->graph.num_vertices(), "output length does not match the vertex count");
        const auto local = actdate::local_average_init(graph->graph);
        std::copy(local.z.begin(), local.z.end(), z);
    });
}

actdate_status actdate_default_params(const actdate_graph* graph, const actdate_fit_config* config,
                                      actdate_params* params) {
    return guarded([&] {
        require(graph && params, "null argument");
        actdate_fit_config defaults;
        actdate_fit_config_default(&defaults);
        *params = to_c(actdate::default_param_init(graph->graph, to_cpp(config ? *config : defaults)));
    });
}

actdate_status actdate_fit_run(const actdate_graph* graph, const actdate_fit_config* config, const double* init_z,
                               size_t n, const actdate_params* init_params, actdate_fit** out) {
    return guarded([&] {
        require(graph && out, "null argument");
        actdate_fit_config defaults;
        actdate_fit_config_default(&defaults);
        std::optional<actdate::LatentDates> z0;
        if (init_z)
            z0 = dates_from(init_z, n);
        std::optional<actdate::ModelParams> p0;
        if (init_params)
            p0 = to_cpp(*init_params);
        *out = new actdate_fit{actdate::fit(graph->graph, to_cpp(config ? *config : defaults), z0, p0)};
    });
}

actdate_status actdate_fit_get_summary(const actdate_fit* fit, actdate_fit_summary* summary) {
    return guarded([&] {
        require(fit && summary, "null argument");
        const auto& r = fit->result;
        summary->params = to_c(r.params_hat);
        summary->initial_log_likelihood = r.initial_log_likelihood;
        summary->final_log_likelihood = r.final_log_likelihood;
        summary->iterations = r.iterations;
        summary->converged = r.converged ? 1 : 0;
        summary->stop_reason = static_cast<actdate_stop_reason>(r.stop_reason);
    });
}

actdate_status actdate_fit_get_z(const actdate_fit* fit, double* z, size_t n) {
    return guarded([&] {
        require(fit && z, "null argument");
        require(n == fit->result.z_hat.size(), "output length does not match the vertex count");
        std::copy(fit->result.z_hat.z.begin(), fit->result.z_hat.z.end(), z);
    });
}

size_t actdate_fit_trace_length(const actdate_fit* fit) { return fit ? fit->result.trace.size() : 0; }

actdate_status actdate_fit_get_trace(const actdate_fit* fit, double* trace, size_t length) {
    return guarded([&] {
        require(fit && trace, "null argument");
        require(length == fit->result.trace.size(), "output length does not match the trace length");
        std::copy(fit->result.trace.begin(), fit->result.trace.end(), trace);
    });
}

actdate_status actdate_fit_write_trace(const actdate_fit* fit, const char* path) {
    return guarded([&] {
        require(fit != nullptr, "null fit");
        write_file(path, [&](std::ostream& os) { actdate::write_trace(os, fit->result.trace); });
    });
}

void actdate_fit_destroy(actdate_fit* fit) { delete fit; }

actdate_status actdate_write_node_estimates(const char* path, const size_t* ids, const double* z_local,
                                            const double* z_model, size_t n) {
    return guarded([&] {
        const auto local = dates_from(z_local, n);
        const auto model = dates_from(z_model, n);
        const std::span<const std::size_t> labels = ids ? std::span<const std::size_t>(ids, n)
                                                        : std::span<const std::size_t>{};
        write_file(path, [&](std::ostream& os) { actdate::write_node_estimates(os, local, model, labels); });
    });
}

void actdate_sim_config_default(actdate_sim_config* config) {
    if (config == nullptr)
        return;
    const actdate::SimConfig s;
    *config = {s.n,     s.z_low, s.z_high, s.target_density, s.life_span, s.epsilon,
               s.sigma, ACTDATE_DATES_GAUSSIAN, s.rewire_fraction, s.seed};
}

actdate_status actdate_simulate(const actdate_sim_config* config, actdate_sim** out) {
    return guarded([&] {
        require(config && out, "null argument");
        auto sim = std::make_unique<actdate_sim>();
        sim->out = actdate::generate(to_cpp(*config));
        sim->graph.graph = sim->out.graph;
        sim->graph.file_ids.resize(sim->out.graph.num_vertices());
        for (std::size_t i = 0; i < sim->graph.file_ids.size(); ++i)
            sim->graph.file_ids[i] = i;
        *out = sim.release();
    });
}

actdate_status actdate_sim_get_info(const actdate_sim* sim, actdate_sim_info* info) {
    return guarded([&] {
        require(sim && info, "null argument");
        info->params_true = to_c(sim->out.params_true);
        info->num_vertices = sim->out.graph.num_vertices();
        info->num_edges = sim->out.graph.num_edges();
        info->edges_per_vertex = sim->out.edges_per_vertex;
        info->accepted = sim->out.accepted ? 1 : 0;
        info->rewire_skipped = sim->out.rewire_skipped;
    });
}

const actdate_graph* actdate_sim_graph(const actdate_sim* sim) { return sim ? &sim->graph : nullptr; }

actdate_status actdate_sim_get_z_true(const actdate_sim* sim, double* z, size_t n) {
    return guarded([&] {
        require(sim && z, "null argument");
        require(n == sim->out.z_true.size(), "output length does not match the vertex count");
        std::copy(sim->out.z_true.z.begin(), sim->out.z_true.z.end(), z);
    });
}

actdate_status actdate_sim_get_original_ids(const actdate_sim* sim, size_t* ids, size_t n) {
    return guarded([&] {
        require(sim && ids, "null argument");
        require(n == sim->out.original_ids.size(), "output length does not match the vertex count");
        std::copy(sim->out.original_ids.begin(), sim->out.original_ids.end(), ids);
    });
}

actdate_status actdate_sim_write_truth(const actdate_sim* sim, const char* path) {
    return guarded([&] {
        require(sim != nullptr, "null simulation");
        write_file(path, [&](std::ostream& os) { actdate::write_truth(os, sim->out.z_true); });
    });
}

void actdate_sim_destroy(actdate_sim* sim) { delete sim; }

void actdate_experiment_config_default(actdate_experiment_config* config) {
    if (config == nullptr)
        return;
    const actdate::ExperimentConfig e;
    config->scenario = to_c(e.scenario);
    config->replicates = e.replicates;
    config->density_low = e.density_low;
    config->density_high = e.density_high;
    config->rewire_fraction = e.rewire_fraction;
    config->seed_base = e.seed_base;
    config->threads = e.threads;
    actdate_sim_config_default(&config->base);
}

actdate_status actdate_experiment_run(const actdate_experiment_config* config, const actdate_fit_config* fit_config,
                                      actdate_experiment** out) {
    return guarded([&] {
        require(config && out, "null argument");
        actdate::ExperimentConfig e;
        e.scenario = to_cpp(config->scenario);
        e.replicates = config->replicates;
        e.density_low = config->density_low;
        e.density_high = config->density_high;
        e.rewire_fraction = config->rewire_fraction;
        e.seed_base = config->seed_base;
        e.threads = config->threads;
        e.base = to_cpp(config->base);
        actdate_fit_config defaults;
        actdate_fit_config_default(&defaults);
        *out = new actdate_experiment{actdate::run_experiment(e, to_cpp(fit_config ? *fit_config : defaults))};
    });
}

size_t actdate_experiment_size(const actdate_experiment* experiment) {
    return experiment ? experiment->records.size() : 0;
}

actdate_status actdate_experiment_get_record(const actdate_experiment* experiment, size_t index,
                                             actdate_record* record) {
    return guarded([&] {
        require(experiment && record, "null argument");
        require(index < experiment->records.size(), "record index out of range");
        const auto& r = experiment->records[index];
        *record = {to_c(r.scenario), r.rewire_fraction, r.target_density, r.seed,
                   r.n_lcc,          r.edges,           r.edges_per_vertex, r.mse_local,
                   r.mse_model,      r.improvement,     r.converged ? 1 : 0, r.accepted ? 1 : 0};
    });
}

actdate_status actdate_experiment_write_records(const actdate_experiment* experiment, const char* path) {
    return guarded([&] {
        require(experiment != nullptr, "null experiment");
        write_file(path, [&](std::ostream& os) { actdate::write_records(os, experiment->records); });
    });
}

actdate_status actdate_experiment_smooth(const actdate_experiment* experiment, double bandwidth, int use_floor,
                                         double exclude_below, actdate_curve** out) {
    return guarded([&] {
        require(experiment && out, "null argument");
        std::optional<double> h;
        if (bandwidth > 0.0)
            h = bandwidth;
        std::optional<double> floor;
        if (use_floor)
            floor = exclude_below;
        auto summary = actdate::summarize(experiment->records, h, floor);
        if (summary.used < 2)
            throw actdate::InvalidInput("fewer than two accepted records to smooth");
        *out = new actdate_curve{std::move(summary.curve), summary.used};
    });
}

void actdate_experiment_destroy(actdate_experiment* experiment) { delete experiment; }

actdate_status actdate_kernel_smooth(const double* xs, const double* ys, size_t count, double bandwidth,
                                     const double* grid, size_t grid_length, actdate_curve** out) {
    return guarded([&] {
        require(xs && ys && out, "null argument");
        std::optional<double> h;
        if (bandwidth > 0.0)
            h = bandwidth;
        std::optional<std::vector<double>> g;
        if (grid)
            g = std::vector<double>(grid, grid + grid_length);
        *out = new actdate_curve{actdate::kernel_smooth({xs, count}, {ys, count}, h, std::move(g)), count};
    });
}

size_t actdate_curve_length(const actdate_curve* curve) { return curve ? curve->curve.grid_x.size() : 0; }

double actdate_curve_bandwidth(const actdate_curve* curve) {
    return curve ? curve->curve.bandwidth : std::numeric_limits<double>::quiet_NaN();
}

actdate_status actdate_curve_point(const actdate_curve* curve, size_t k, double* x, double* value, int* defined) {
    return guarded([&] {
        require(curve && x && value && defined, "null argument");
        require(k < curve->curve.grid_x.size(), "grid index out of range");
        *x = curve->curve.grid_x[k];
        const auto& v = curve->curve.values[k];
        *defined = v ? 1 : 0;
        *value = v ? *v : std::numeric_limits<double>::quiet_NaN();
    });
}

actdate_status actdate_curve_positive_crossing(const actdate_curve* curve, double* x, int* found) {
    return guarded([&] {
        require(curve && x && found, "null argument");
        const auto c = actdate::positive_crossing(curve->curve);
        *found = c ? 1 : 0;
        *x = c ? *c : std::numeric_limits<double>::quiet_NaN();
    });
}

size_t actdate_curve_samples(const actdate_curve* curve) { return curve ? curve->samples : 0; }

actdate_status actdate_curve_write_csv(const actdate_curve* curve, const char* path) {
    return guarded([&] {
        require(curve != nullptr, "null curve");
        write_file(path, [&](std::ostream& os) { actdate::write_curve(os, curve->curve); });
    });
}

void actdate_curve_destroy(actdate_curve* curve) { delete curve; }

}  // extern "C"
