#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace actdate {

using Vertex = std::size_t;

/// An undirected interaction between two agents, with `u < v`.
struct Edge {
    Vertex u;
    Vertex v;
    double date;  // years

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised when a graph or parameter set violates its invariants.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph carrying one date per edge.
///
/// Immutable after construction. Edges are normalised to `u < v` and kept in
/// insertion order; the adjacency lists hold indices into `edges()`.
class TimestampedGraph {
  public:
    TimestampedGraph() = default;

    /// Throws InvalidInput on self-loops, duplicate pairs, out-of-range
    /// endpoints or non-finite dates.
    TimestampedGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_[k]; }

    /// Indices of the edges incident to `v`.
    std::span<const std::size_t> incident(Vertex v) const { return incident_[v]; }
    std::size_t degree(Vertex v) const { return incident_[v].size(); }

    /// Number of unordered vertex pairs, n(n-1)/2.
    double num_pairs() const { return 0.5 * static_cast<double>(n_) * static_cast<double>(n_ > 0 ? n_ - 1 : 0); }

    /// Edge density over unordered pairs; 0 for graphs with fewer than two vertices.
    double density() const;

    /// Whether the unordered pair {a, b} is an edge.
    bool has_edge(Vertex a, Vertex b) const;

    /// Same vertex count and the same set of (pair, date) triples.
    bool same_as(const TimestampedGraph& other) const;

  private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
};

/// Per-vertex activity dates, in years.
struct LatentDates {
    std::vector<double> z;

    std::size_t size() const { return z.size(); }
    double operator[](std::size_t i) const { return z[i]; }
    double& operator[](std::size_t i) { return z[i]; }
    friend bool operator==(const LatentDates&, const LatentDates&) = default;
};

}  // namespace actdate
