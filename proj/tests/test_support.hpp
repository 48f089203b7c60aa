#pragma once

// Test-only helpers: random instances and independent reference
// implementations that share no code with the library's evaluation paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "actdate/graph.hpp"
#include "actdate/model.hpp"

namespace actdate::testing {

inline TimestampedGraph random_graph(std::size_t n, double edge_prob, std::mt19937_64& rng, double date_low = 1200.0,
                                     double date_high = 1400.0) {
    std::bernoulli_distribution coin(edge_prob);
    std::uniform_real_distribution<double> date(date_low, date_high);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (coin(rng))
                edges.push_back({i, j, date(rng)});
    return TimestampedGraph(n, std::move(edges));
}

inline LatentDates random_dates(std::size_t n, std::mt19937_64& rng, double low = 1200.0, double high = 1400.0) {
    std::uniform_real_distribution<double> u(low, high);
    LatentDates z{std::vector<double>(n)};
    for (double& v : z.z)
        v = u(rng);
    return z;
}

/// Termwise evaluation over ordered pairs i != j with an explicit adjacency
/// matrix, halved to the unordered-pair convention used by the library.
inline double naive_log_likelihood(const TimestampedGraph& g, const LatentDates& z, const ModelParams& p) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::vector<std::vector<double>> date(n, std::vector<double>(n, 0.0));
    for (const Edge& e : g.edges()) {
        adj[e.u][e.v] = adj[e.v][e.u] = 1;
        date[e.u][e.v] = date[e.v][e.u] = e.date;
    }
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const long double eta = static_cast<long double>(p.alpha) -
                                    static_cast<long double>(p.beta) * (static_cast<long double>(z[i]) - z[j]) *
                                        (static_cast<long double>(z[i]) - z[j]);
            if (adj[i][j]) {
                const long double resid = date[i][j] - (static_cast<long double>(z[i]) + z[j]) / 2.0L;
                total += -std::log(static_cast<long double>(p.sigma)) -
                         resid * resid / (2.0L * p.sigma * static_cast<long double>(p.sigma));
            }
            total += adj[i][j] * eta - std::log1p(std::exp(eta));
        }
    }
    return static_cast<double>(total / 2.0L);
}

inline bool close_relative(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

}  // namespace actdate::testing
