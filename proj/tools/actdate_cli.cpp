// actdate command-line front end. Talks to the library exclusively through
// the C interface in actdate/actdate.h.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "actdate/actdate.h"

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_input = 2,
    exit_not_converged = 3,
    exit_fit_failed = 4,
    exit_internal = 5,
};

int exit_for(actdate_status status) {
    switch (status) {
        case ACTDATE_OK: return exit_ok;
        case ACTDATE_ERR_INVALID_ARGUMENT:
        case ACTDATE_ERR_IO:
        case ACTDATE_ERR_PARSE: return exit_input;
        case ACTDATE_ERR_FIT: return exit_fit_failed;
        case ACTDATE_ERR_INTERNAL: break;
    }
    return exit_internal;
}

const char* stop_name(actdate_stop_reason r) {
    switch (r) {
        case ACTDATE_STOP_TOLERANCE: return "tolerance";
        case ACTDATE_STOP_STATIONARY: return "stationary";
        case ACTDATE_STOP_LINE_SEARCH: return "line_search";
        case ACTDATE_STOP_MAX_ITERATIONS: return "max_iterations";
        case ACTDATE_STOP_DEGENERATE: return "degenerate";
    }
    return "unknown";
}

int report(actdate_status status) {
    std::fprintf(stderr, "actdate: %s\n", actdate_last_error());
    return exit_for(status);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using GraphPtr = std::unique_ptr<actdate_graph, Deleter<actdate_graph, actdate_graph_destroy>>;
using FitPtr = std::unique_ptr<actdate_fit, Deleter<actdate_fit, actdate_fit_destroy>>;
using SimPtr = std::unique_ptr<actdate_sim, Deleter<actdate_sim, actdate_sim_destroy>>;
using ExperimentPtr = std::unique_ptr<actdate_experiment, Deleter<actdate_experiment, actdate_experiment_destroy>>;
using CurvePtr = std::unique_ptr<actdate_curve, Deleter<actdate_curve, actdate_curve_destroy>>;

struct EstimateOptions {
    std::string input;
    std::string output;
    std::string trace;
    bool compact_ids = false;
    bool strict = false;
    actdate_fit_config fit{};
};

int run_estimate(const EstimateOptions& opt) {
    actdate_graph* raw_graph = nullptr;
    if (auto s = actdate_graph_read_csv(opt.input.c_str(), opt.compact_ids, &raw_graph); s != ACTDATE_OK)
        return report(s);
    GraphPtr graph(raw_graph);

    const std::size_t n = actdate_graph_num_vertices(graph.get());
    actdate_fit* raw_fit = nullptr;
    if (auto s = actdate_fit_run(graph.get(), &opt.fit, nullptr, 0, nullptr, &raw_fit); s != ACTDATE_OK)
        return report(s);
    FitPtr fit(raw_fit);

    std::vector<double> local(n), model(n);
    std::vector<std::size_t> ids(n);
    for (std::size_t v = 0; v < n; ++v)
        actdate_graph_file_id(graph.get(), v, &ids[v]);
    actdate_fit_summary summary{};
    if (auto s = actdate_local_average(graph.get(), local.data(), n); s != ACTDATE_OK)
        return report(s);
    if (auto s = actdate_fit_get_z(fit.get(), model.data(), n); s != ACTDATE_OK)
        return report(s);
    actdate_fit_get_summary(fit.get(), &summary);

    if (auto s = actdate_write_node_estimates(opt.output.c_str(), ids.data(), local.data(), model.data(), n);
        s != ACTDATE_OK)
        return report(s);
    if (!opt.trace.empty())
        if (auto s = actdate_fit_write_trace(fit.get(), opt.trace.c_str()); s != ACTDATE_OK)
            return report(s);

    std::printf("log_likelihood=%.17g iterations=%zu alpha=%.17g beta=%.17g sigma=%.17g converged=%d stop=%s%s\n",
                summary.final_log_likelihood, summary.iterations, summary.params.alpha, summary.params.beta,
                summary.params.sigma, summary.converged, stop_name(summary.stop_reason),
                summary.converged ? "" : " warning=not_converged");
    if (!summary.converged) {
        std::fprintf(stderr, "actdate: warning: optimizer stopped (%s) after %zu iterations without converging\n",
                     stop_name(summary.stop_reason), summary.iterations);
        if (opt.strict)
            return exit_not_converged;
    }
    return exit_ok;
}

struct SimulateOptions {
    actdate_sim_config sim{};
    std::string date_model = "gaussian";
    std::string out_edges;
    std::string out_truth;
};

int run_simulate(SimulateOptions opt) {
    opt.sim.date_model = opt.date_model == "uniform" ? ACTDATE_DATES_UNIFORM : ACTDATE_DATES_GAUSSIAN;
    actdate_sim* raw = nullptr;
    if (auto s = actdate_simulate(&opt.sim, &raw); s != ACTDATE_OK)
        return report(s);
    SimPtr sim(raw);

    if (auto s = actdate_graph_write_csv(actdate_sim_graph(sim.get()), opt.out_edges.c_str()); s != ACTDATE_OK)
        return report(s);
    if (auto s = actdate_sim_write_truth(sim.get(), opt.out_truth.c_str()); s != ACTDATE_OK)
        return report(s);

    actdate_sim_info info{};
    actdate_sim_get_info(sim.get(), &info);
    std::printf("accepted=%d vertices=%zu edges=%zu edges_per_vertex=%.17g alpha=%.17g beta=%.17g sigma=%.17g\n",
                info.accepted, info.num_vertices, info.num_edges, info.edges_per_vertex, info.params_true.alpha,
                info.params_true.beta, info.params_true.sigma);
    if (info.rewire_skipped > 0)
        std::fprintf(stderr, "actdate: warning: %zu edges could not be rewired\n", info.rewire_skipped);
    return exit_ok;
}

struct ExperimentOptions {
    actdate_experiment_config experiment{};
    actdate_fit_config fit{};
    std::string scenario = "ideal";
    std::string records;
    std::string curve;
    double bandwidth = 0.0;
    double exclude_below = 0.0;
    bool use_floor = false;
};

void print_crossing(const char* label, const actdate_curve* curve) {
    double x = 0.0;
    int found = 0;
    actdate_curve_positive_crossing(curve, &x, &found);
    if (found)
        std::printf("%s=%.6g", label, x);
    else
        std::printf("%s=none", label);
}

int run_experiment(ExperimentOptions opt) {
    if (opt.scenario == "uniform")
        opt.experiment.scenario = ACTDATE_SCENARIO_UNIFORM;
    else if (opt.scenario == "rewired")
        opt.experiment.scenario = ACTDATE_SCENARIO_REWIRED;
    else
        opt.experiment.scenario = ACTDATE_SCENARIO_IDEAL;

    actdate_experiment* raw = nullptr;
    if (auto s = actdate_experiment_run(&opt.experiment, &opt.fit, &raw); s != ACTDATE_OK)
        return report(s);
    ExperimentPtr experiment(raw);

    if (auto s = actdate_experiment_write_records(experiment.get(), opt.records.c_str()); s != ACTDATE_OK)
        return report(s);

    std::size_t accepted = 0, converged = 0;
    const std::size_t total = actdate_experiment_size(experiment.get());
    for (std::size_t k = 0; k < total; ++k) {
        actdate_record r{};
        actdate_experiment_get_record(experiment.get(), k, &r);
        accepted += r.accepted;
        converged += r.converged;
    }
    std::printf("replicates=%zu accepted=%zu converged=%zu ", total, accepted, converged);

    actdate_curve* raw_curve = nullptr;
    if (actdate_experiment_smooth(experiment.get(), opt.bandwidth, 0, 0.0, &raw_curve) != ACTDATE_OK) {
        std::printf("crossing=none\n");
        std::fprintf(stderr, "actdate: warning: %s; no curve written\n", actdate_last_error());
        return exit_ok;
    }
    CurvePtr curve(raw_curve);
    if (!opt.curve.empty())
        if (auto s = actdate_curve_write_csv(curve.get(), opt.curve.c_str()); s != ACTDATE_OK)
            return report(s);
    std::printf("bandwidth=%.6g ", actdate_curve_bandwidth(curve.get()));
    print_crossing("crossing", curve.get());

    if (opt.use_floor) {
        actdate_curve* raw_filtered = nullptr;
        if (actdate_experiment_smooth(experiment.get(), opt.bandwidth, 1, opt.exclude_below, &raw_filtered) ==
            ACTDATE_OK) {
            CurvePtr filtered(raw_filtered);
            std::printf(" ");
            print_crossing("crossing_filtered", filtered.get());
            std::printf(" filtered_samples=%zu", actdate_curve_samples(filtered.get()));
        } else {
            std::printf(" crossing_filtered=none");
        }
    }
    std::printf("\n");
    return exit_ok;
}

void add_fit_options(CLI::App* cmd, actdate_fit_config& fit) {
    cmd->add_option("--max-iter", fit.max_iterations, "Iteration budget")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", fit.relative_tolerance, "Relative log-likelihood change that stops the ascent")
        ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Activity date estimation for timestamped interaction networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(actdate_version()));

    EstimateOptions est;
    actdate_fit_config_default(&est.fit);
    auto* estimate = app.add_subcommand("estimate", "Fit activity dates to an edge list");
    estimate->add_option("--input", est.input, "Edge list CSV (src,dst,date)")->required();
    estimate->add_option("--output", est.output, "Node estimates CSV to write")->required();
    add_fit_options(estimate, est.fit);
    estimate->add_option("--sigma-init", est.fit.sigma_init, "Initial date noise scale, years")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--span-init", est.fit.span_init, "Temporal distance with near-zero link probability")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--epsilon-init", est.fit.epsilon_init, "Link probability at --span-init")
        ->check(CLI::Range(0.0, 1.0));
    estimate->add_option("--trace", est.trace, "Write the log-likelihood trace to this CSV");
    estimate->add_flag("--compact-ids", est.compact_ids, "Renumber vertex ids to 0..n-1");
    estimate->add_flag("--strict", est.strict, "Exit with status 3 when the fit does not converge");

    SimulateOptions sim;
    actdate_sim_config_default(&sim.sim);
    auto* simulate = app.add_subcommand("simulate", "Generate a ground-truthed network");
    simulate->add_option("--density", sim.sim.target_density, "Link probability at equal activity dates")
        ->required();
    simulate->add_option("--seed", sim.sim.seed, "Random seed");
    simulate->add_option("--date-model", sim.date_model, "Edge date law")
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    simulate->add_option("--rewire-fraction", sim.sim.rewire_fraction, "Fraction of edges to rewire");
    simulate->add_option("--n", sim.sim.n, "Number of vertices")->check(CLI::PositiveNumber);
    simulate->add_option("--z-low", sim.sim.z_low, "Lower bound of activity dates");
    simulate->add_option("--z-high", sim.sim.z_high, "Upper bound of activity dates");
    simulate->add_option("--life-span", sim.sim.life_span, "Distance at which link probability is epsilon");
    simulate->add_option("--sigma", sim.sim.sigma, "Edge date standard deviation");
    simulate->add_option("--epsilon", sim.sim.epsilon, "Link probability at the life span");
    simulate->add_option("--out-edges", sim.out_edges, "Edge list CSV to write")->required();
    simulate->add_option("--out-truth", sim.out_truth, "Ground truth CSV (node,z_true) to write")->required();

    ExperimentOptions exp;
    actdate_experiment_config_default(&exp.experiment);
    actdate_fit_config_default(&exp.fit);
    auto* experiment = app.add_subcommand("experiment", "Run a batch of simulate-and-fit replicates");
    experiment->add_option("--scenario", exp.scenario, "ideal, uniform or rewired")
        ->check(CLI::IsMember({"ideal", "uniform", "rewired"}));
    experiment->add_option("--replicates", exp.experiment.replicates, "Number of simulated networks")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--rewire-fraction", exp.experiment.rewire_fraction,
                           "Fraction of rewired edges (rewired scenario)");
    experiment->add_option("--seed-base", exp.experiment.seed_base, "Replicate r uses seed seed-base + r");
    experiment->add_option("--density-low", exp.experiment.density_low, "Lower end of the density sweep");
    experiment->add_option("--density-high", exp.experiment.density_high, "Upper end of the density sweep");
    experiment->add_option("--threads", exp.experiment.threads, "Worker threads (0: all cores)");
    experiment->add_option("--records", exp.records, "Experiment records CSV to write")->required();
    experiment->add_option("--curve", exp.curve, "Smoothed curve CSV to write");
    experiment->add_option("--bandwidth", exp.bandwidth, "Kernel bandwidth (default: Silverman)")
        ->check(CLI::PositiveNumber);
    auto* floor = experiment->add_option("--exclude-below", exp.exclude_below,
                                         "Also report the crossing without records below this improvement");
    add_fit_options(experiment, exp.fit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    exp.use_floor = floor->count() > 0;

    if (estimate->parsed())
        return run_estimate(est);
    if (simulate->parsed())
        return run_simulate(sim);
    return run_experiment(exp);
}
