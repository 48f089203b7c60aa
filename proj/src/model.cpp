#include "actdate/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace actdate {

bool ModelParams::valid() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(sigma) && beta > 0.0 && sigma > 0.0;
}

void ModelParams::validate() const {
    if (!valid())
        throw InvalidInput("invalid model parameters: alpha=" + std::to_string(alpha) +
                           " beta=" + std::to_string(beta) + " sigma=" + std::to_string(sigma));
}

double softplus(double x) {
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double connection_logit(double zi, double zj, const ModelParams& params) {
    const double delta = zi - zj;
    return params.alpha - params.beta * delta * delta;
}

double connection_probability(double zi, double zj, const ModelParams& params) {
    return sigmoid(connection_logit(zi, zj, params));
}

double date_log_density(double date, double zi, double zj, double sigma) {
    const double r = date - 0.5 * (zi + zj);
    return -std::log(sigma) - r * r / (2.0 * sigma * sigma);
}

namespace {

void check_dimensions(const TimestampedGraph& graph, const LatentDates& z) {
    if (z.size() != graph.num_vertices())
        throw InvalidInput("latent date vector has " + std::to_string(z.size()) + " entries, graph has " +
                           std::to_string(graph.num_vertices()) + " vertices");
}

}  // namespace

double log_likelihood(const TimestampedGraph& graph, const LatentDates& z, const ModelParams& params) {
    check_dimensions(graph, z);
    const std::size_t n = graph.num_vertices();

    double total = 0.0;
    for (const Edge& e : graph.edges())
        total += connection_logit(z[e.u], z[e.v], params) + date_log_density(e.date, z[e.u], z[e.v], params.sigma);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            total -= softplus(connection_logit(z[i], z[j], params));
    return total;
}

double log_likelihood_and_gradient(const TimestampedGraph& graph, const LatentDates& z,
                                   const ModelParams& params, LikelihoodGradient& grad) {
    check_dimensions(graph, z);
    const std::size_t n = graph.num_vertices();
    const double inv_var = 1.0 / (params.sigma * params.sigma);

    grad.z.assign(n, 0.0);
    grad.alpha = grad.beta = grad.sigma = 0.0;

    double total = 0.0;
    double squared_residuals = 0.0;
    for (const Edge& e : graph.edges()) {
        const double delta = z[e.u] - z[e.v];
        const double r = e.date - 0.5 * (z[e.u] + z[e.v]);
        total += params.alpha - params.beta * delta * delta;
        squared_residuals += r * r;

        // d(logit)/dz_u = -2 beta delta; d(date term)/dz_u = r / (2 sigma^2)
        const double link = -2.0 * params.beta * delta;
        const double date = 0.5 * r * inv_var;
        grad.z[e.u] += link + date;
        grad.z[e.v] += -link + date;
        grad.alpha += 1.0;
        grad.beta -= delta * delta;
    }
    const double m = static_cast<double>(graph.num_edges());
    total += -m * std::log(params.sigma) - 0.5 * squared_residuals * inv_var;
    grad.sigma = -m / params.sigma + squared_residuals * inv_var / params.sigma;

    for (std::size_t i = 0; i < n; ++i) {
        const double zi = z[i];
        double gi = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double delta = zi - z[j];
            const double logit = params.alpha - params.beta * delta * delta;
            // one exp serves both softplus and sigmoid
            const double e = std::exp(-std::abs(logit));
            total -= std::max(logit, 0.0) + std::log1p(e);
            const double p = logit >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
            const double g = 2.0 * params.beta * delta * p;
            gi += g;
            grad.z[j] -= g;
            grad.alpha -= p;
            grad.beta += delta * delta * p;
        }
        grad.z[i] += gi;
    }
    return total;
}

LikelihoodGradient log_likelihood_gradient(const TimestampedGraph& graph, const LatentDates& z,
                                           const ModelParams& params) {
    LikelihoodGradient grad;
    log_likelihood_and_gradient(graph, z, params, grad);
    return grad;
}

}  // namespace actdate
