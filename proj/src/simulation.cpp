#include "actdate/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace actdate {

void SimConfig::validate() const {
    if (n == 0)
        throw InvalidInput("n must be positive");
    if (!std::isfinite(z_low) || !std::isfinite(z_high) || z_low > z_high)
        throw InvalidInput("activity date range must satisfy z_low <= z_high");
    if (!(target_density > 0.0 && target_density < 1.0))
        throw InvalidInput("target density must lie in (0, 1), got " + std::to_string(target_density));
    if (!(life_span > 0.0) || !std::isfinite(life_span))
        throw InvalidInput("life span must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidInput("epsilon must lie in (0, 1)");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidInput("sigma must be positive");
    if (!(rewire_fraction >= 0.0 && rewire_fraction < 1.0))
        throw InvalidInput("rewire fraction must lie in [0, 1)");
}

double alpha_for_density(double density) {
    if (!(density > 0.0 && density < 1.0))
        throw InvalidInput("density must lie in (0, 1), got " + std::to_string(density));
    return std::log(density / (1.0 - density));
}

double beta_for_span(double alpha, double span, double epsilon) {
    if (!(span > 0.0) || !std::isfinite(span))
        throw InvalidInput("span must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidInput("epsilon must lie in (0, 1)");
    const double beta = (std::log(1.0 / epsilon - 1.0) + alpha) / (span * span);
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidInput("alpha, span and epsilon give a non-positive beta");
    return beta;
}

RewireResult rewire(const TimestampedGraph& graph, double fraction, Rng& rng) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw InvalidInput("rewire fraction must lie in [0, 1)");

    RewireResult out;
    const std::size_t m = graph.num_edges();
    const std::size_t n = graph.num_vertices();
    out.selected = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m)));
    if (out.selected == 0 || n < 2) {
        out.graph = graph;
        out.selected = 0;
        return out;
    }

    std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
    std::set<std::pair<Vertex, Vertex>> pairs;
    for (const Edge& e : edges)
        pairs.emplace(e.u, e.v);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> chosen;
    chosen.reserve(out.selected);
    std::sample(order.begin(), order.end(), std::back_inserter(chosen), out.selected, rng);

    constexpr int max_attempts = 100;
    std::uniform_int_distribution<Vertex> any_vertex(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k : chosen) {
        Edge& e = edges[k];
        const Vertex kept = coin(rng) ? e.u : e.v;
        bool moved = false;
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            const Vertex w = any_vertex(rng);
            if (w == kept)
                continue;
            const auto key = std::minmax(kept, w);
            if (pairs.count(key))
                continue;
            pairs.erase({e.u, e.v});
            pairs.insert(key);
            e.u = key.first;
            e.v = key.second;
            moved = true;
            break;
        }
        if (!moved)
            ++out.skipped;
    }
    out.graph = TimestampedGraph(n, std::move(edges));
    return out;
}

Component largest_connected_component(const TimestampedGraph& graph) {
    const std::size_t n = graph.num_vertices();
    std::vector<int> label(n, -1);
    std::vector<Vertex> best;
    std::vector<Vertex> stack;

    int next = 0;
    for (Vertex root = 0; root < n; ++root) {
        if (label[root] >= 0)
            continue;
        std::vector<Vertex> members{root};
        label[root] = next;
        stack.assign(1, root);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (std::size_t k : graph.incident(v)) {
                const Edge& e = graph.edge(k);
                const Vertex w = e.u == v ? e.v : e.u;
                if (label[w] < 0) {
                    label[w] = next;
                    members.push_back(w);
                    stack.push_back(w);
                }
            }
        }
        // Components are discovered in order of their smallest id, so a
        // strict comparison keeps the earliest on ties.
        if (members.size() > best.size())
            best = std::move(members);
        ++next;
    }

    std::sort(best.begin(), best.end());
    std::vector<std::size_t> new_id(n, n);
    for (std::size_t i = 0; i < best.size(); ++i)
        new_id[best[i]] = i;

    std::vector<Edge> edges;
    for (const Edge& e : graph.edges())
        if (new_id[e.u] < n && new_id[e.v] < n)
            edges.push_back({new_id[e.u], new_id[e.v], e.date});

    Component c;
    c.graph = TimestampedGraph(best.size(), std::move(edges));
    c.original_ids = std::move(best);
    return c;
}

SimOutput generate(const SimConfig& config) {
    config.validate();
    Rng rng(config.seed);

    SimOutput out;
    out.params_true.alpha = alpha_for_density(config.target_density);
    out.params_true.beta = beta_for_span(out.params_true.alpha, config.life_span, config.epsilon);
    out.params_true.sigma = config.sigma;

    std::vector<double> z(config.n);
    if (config.z_low == config.z_high) {
        std::fill(z.begin(), z.end(), config.z_low);
    } else {
        std::uniform_real_distribution<double> activity(config.z_low, config.z_high);
        for (double& v : z)
            v = activity(rng);
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, config.sigma);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < config.n; ++i) {
        for (Vertex j = i + 1; j < config.n; ++j) {
            if (unit(rng) >= connection_probability(z[i], z[j], out.params_true))
                continue;
            double date;
            if (config.date_model == DateModel::gaussian) {
                date = 0.5 * (z[i] + z[j]) + noise(rng);
            } else {
                const double lo = std::min(z[i], z[j]), hi = std::max(z[i], z[j]);
                date = lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng);
            }
            edges.push_back({i, j, date});
        }
    }
    TimestampedGraph full(config.n, std::move(edges));

    if (config.rewire_fraction > 0.0) {
        RewireResult r = rewire(full, config.rewire_fraction, rng);
        full = std::move(r.graph);
        out.rewire_skipped = r.skipped;
    }

    Component lcc = largest_connected_component(full);
    out.graph = std::move(lcc.graph);
    out.original_ids = std::move(lcc.original_ids);
    out.z_true.z.reserve(out.original_ids.size());
    for (Vertex v : out.original_ids)
        out.z_true.z.push_back(z[v]);

    const std::size_t m = out.graph.num_vertices();
    out.edges_per_vertex = m > 0 ? static_cast<double>(out.graph.num_edges()) / static_cast<double>(m) : 0.0;
    out.accepted = m >= 2 && out.graph.num_edges() >= m + 3;
    return out;
}

}  // namespace actdate
