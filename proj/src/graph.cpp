#include "actdate/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>

namespace actdate {

TimestampedGraph::TimestampedGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), incident_(n) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        Edge& e = edges_[k];
        if (e.u == e.v)
            throw InvalidInput("self-loop on vertex " + std::to_string(e.u));
        if (e.u >= n_ || e.v >= n_)
            throw InvalidInput("edge endpoint out of range (n = " + std::to_string(n_) + ")");
        if (!std::isfinite(e.date))
            throw InvalidInput("non-finite date on edge " + std::to_string(k));
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (!seen.emplace(e.u, e.v).second)
            throw InvalidInput("duplicate edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) + "}");
        incident_[e.u].push_back(k);
        incident_[e.v].push_back(k);
    }
}

double TimestampedGraph::density() const {
    const double pairs = num_pairs();
    return pairs > 0 ? static_cast<double>(edges_.size()) / pairs : 0.0;
}

bool TimestampedGraph::has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_)
        return false;
    const Vertex probe = degree(a) <= degree(b) ? a : b;
    const Vertex other = probe == a ? b : a;
    return std::any_of(incident_[probe].begin(), incident_[probe].end(), [&](std::size_t k) {
        const Edge& e = edges_[k];
        return e.u == other || e.v == other;
    });
}

bool TimestampedGraph::same_as(const TimestampedGraph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size())
        return false;
    auto key = [](const Edge& e) { return std::tie(e.u, e.v, e.date); };
    auto sorted = [&](std::vector<Edge> es) {
        std::sort(es.begin(), es.end(), [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
        return es;
    };
    return sorted(edges_) == sorted(other.edges_);
}

}  // namespace actdate
