#include "actdate/estimation.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace actdate {

void FitConfig::validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (max_iterations == 0)
        throw InvalidInput("max_iterations must be positive");
    if (!positive(relative_tolerance) || relative_tolerance >= 1.0)
        throw InvalidInput("relative_tolerance must lie in (0, 1)");
    if (!positive(initial_step))
        throw InvalidInput("initial_step must be positive");
    if (!positive(armijo_c) || armijo_c >= 1.0)
        throw InvalidInput("armijo_c must lie in (0, 1)");
    if (!positive(backtracking_factor) || backtracking_factor >= 1.0)
        throw InvalidInput("backtracking_factor must lie in (0, 1)");
    if (max_backtracks == 0)
        throw InvalidInput("max_backtracks must be positive");
    if (!positive(epsilon_init) || epsilon_init >= 1.0)
        throw InvalidInput("epsilon_init must lie in (0, 1)");
    if (!positive(span_init))
        throw InvalidInput("span_init must be positive");
    if (!positive(sigma_init))
        throw InvalidInput("sigma_init must be positive");
}

LatentDates local_average_init(const TimestampedGraph& graph) {
    const std::size_t n = graph.num_vertices();
    LatentDates z{std::vector<double>(n, 0.0)};
    if (graph.num_edges() == 0)
        return z;

    double global = 0.0;
    for (const Edge& e : graph.edges())
        global += e.date;
    global /= static_cast<double>(graph.num_edges());

    for (Vertex v = 0; v < n; ++v) {
        const auto incident = graph.incident(v);
        if (incident.empty()) {
            z[v] = global;
            continue;
        }
        double sum = 0.0;
        for (std::size_t k : incident)
            sum += graph.edge(k).date;
        z[v] = sum / static_cast<double>(incident.size());
    }
    return z;
}

ModelParams default_param_init(const TimestampedGraph& graph, const FitConfig& config) {
    double density = graph.density();
    if (!(density > 0.0))
        throw InvalidInput("cannot derive alpha from density 0; supply initial parameters");
    // complete graph: count half a missing pair so the intercept stays finite
    if (density >= 1.0)
        density = (static_cast<double>(graph.num_pairs()) - 0.5) / static_cast<double>(graph.num_pairs());
    ModelParams params;
    params.sigma = config.sigma_init;
    params.alpha = std::log(density / (1.0 - density));
    params.beta = (std::log(1.0 / config.epsilon_init - 1.0) + params.alpha) / (config.span_init * config.span_init);
    if (!params.valid())
        throw InvalidInput("initial beta is not positive; increase span_init or lower epsilon_init");
    return params;
}

namespace {

// Optimisation state: z in centred years, then alpha, log beta, log sigma.
struct Point {
    std::vector<double> z;
    double alpha = 0.0;
    double log_beta = 0.0;
    double log_sigma = 0.0;

    ModelParams params() const { return {alpha, std::exp(log_beta), std::exp(log_sigma)}; }
};

// Dates are shifted by an integer so that the optimiser works on small
// numbers; for dates within a factor two of the offset the subtraction is
// exact, so shifting every input date by an integer leaves the centred
// problem bit-identical.
double centring_offset(const TimestampedGraph& graph) {
    if (graph.num_edges() == 0)
        return 0.0;
    double sum = 0.0;
    for (const Edge& e : graph.edges())
        sum += e.date;
    return std::round(sum / static_cast<double>(graph.num_edges()));
}

TimestampedGraph shifted(const TimestampedGraph& graph, double offset) {
    std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
    for (Edge& e : edges)
        e.date -= offset;
    return TimestampedGraph(graph.num_vertices(), std::move(edges));
}

}  // namespace

FitResult fit(const TimestampedGraph& graph, const FitConfig& config, const std::optional<LatentDates>& init_z,
              const std::optional<ModelParams>& init_params) {
    config.validate();
    if (graph.num_edges() == 0)
        throw InvalidInput("cannot fit a graph without edges");
    if (init_z && init_z->size() != graph.num_vertices())
        throw InvalidInput("initial latent dates do not match the vertex count");
    for (double v : init_z ? init_z->z : std::vector<double>{})
        if (!std::isfinite(v))
            throw InvalidInput("initial latent dates must be finite");
    if (init_params)
        init_params->validate();

    const double offset = centring_offset(graph);
    const TimestampedGraph centred = shifted(graph, offset);
    const std::size_t n = graph.num_vertices();

    const ModelParams start = init_params ? *init_params : default_param_init(graph, config);
    Point x;
    if (init_z) {
        x.z = init_z->z;
        for (double& v : x.z)
            v -= offset;
    } else {
        x.z = local_average_init(centred).z;
    }
    x.alpha = start.alpha;
    x.log_beta = std::log(start.beta);
    x.log_sigma = std::log(start.sigma);

    // Fixed diagonal preconditioner: z moves in years, the rest in raw units.
    const double z_scale = config.sigma_init * config.sigma_init;

    LikelihoodGradient grad;
    LatentDates zbuf{x.z};
    double value = log_likelihood(centred, zbuf, x.params());

    FitResult result;
    result.initial_log_likelihood = value;
    result.trace.push_back(value);

    Point trial;
    std::size_t iter = 0;
    bool stopped = false;
    for (; iter < config.max_iterations; ++iter) {
        zbuf.z = x.z;
        const ModelParams p = x.params();
        log_likelihood_and_gradient(centred, zbuf, p, grad);

        // Chain rule for the log-parameterised scale parameters.
        const double g_log_beta = grad.beta * p.beta;
        const double g_log_sigma = grad.sigma * p.sigma;

        double slope = grad.alpha * grad.alpha + g_log_beta * g_log_beta + g_log_sigma * g_log_sigma;
        for (double g : grad.z)
            slope += z_scale * g * g;

        if (!std::isfinite(slope)) {
            if (iter == 0)
                throw FitError("non-finite gradient at the initial point");
            // keep the last finite iterate and report it as not converged
            result.stop_reason = StopReason::degenerate;
            result.converged = false;
            stopped = true;
            break;
        }
        if (slope <= 1e-300) {
            result.stop_reason = StopReason::stationary;
            result.converged = true;
            stopped = true;
            break;
        }

        double step = config.initial_step;
        bool accepted = false;
        double trial_value = value;
        for (std::size_t b = 0; b <= config.max_backtracks; ++b, step *= config.backtracking_factor) {
            trial.z.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                trial.z[i] = x.z[i] + step * z_scale * grad.z[i];
            trial.alpha = x.alpha + step * grad.alpha;
            trial.log_beta = x.log_beta + step * g_log_beta;
            trial.log_sigma = x.log_sigma + step * g_log_sigma;

            const ModelParams tp = trial.params();
            if (!tp.valid())
                continue;
            zbuf.z = trial.z;
            trial_value = log_likelihood(centred, zbuf, tp);
            if (std::isfinite(trial_value) && trial_value >= value + config.armijo_c * step * slope) {
                accepted = true;
                break;
            }
        }

        if (!accepted) {
            if (iter == 0)
                throw FitError("line search found no ascent step at the initial point");
            result.stop_reason = StopReason::line_search;
            result.converged = true;
            stopped = true;
            break;
        }

        const double change = std::abs(trial_value - value) / (std::abs(value) + 1.0);
        std::swap(x, trial);
        value = trial_value;
        result.trace.push_back(value);
        if (change < config.relative_tolerance) {
            ++iter;
            result.stop_reason = StopReason::tolerance;
            result.converged = true;
            stopped = true;
            break;
        }
    }
    if (!stopped) {
        result.stop_reason = StopReason::max_iterations;
        result.converged = false;
    }

    result.iterations = iter;
    result.final_log_likelihood = value;
    result.params_hat = x.params();
    result.z_hat.z = std::move(x.z);
    for (double& v : result.z_hat.z)
        v += offset;
    return result;
}

}  // namespace actdate
