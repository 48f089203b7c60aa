#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "actdate/graph.hpp"
#include "actdate/model.hpp"

namespace actdate {

using Rng = std::mt19937_64;

enum class DateModel { gaussian, uniform };

struct SimConfig {
    std::size_t n = 100;
    double z_low = 1200.0;
    double z_high = 1400.0;
    double target_density = 0.3;
    double life_span = 80.0;
    double epsilon = 1e-6;
    double sigma = 20.0;
    DateModel date_model = DateModel::gaussian;
    double rewire_fraction = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SimOutput {
    TimestampedGraph graph;            // largest connected component
    LatentDates z_true;                // for the component's vertices
    std::vector<Vertex> original_ids;  // component vertex -> generated vertex
    ModelParams params_true;
    bool accepted = false;
    double edges_per_vertex = 0.0;
    std::size_t rewire_skipped = 0;
};

/// -log(1/d - 1): the intercept giving connection probability d at equal dates.
double alpha_for_density(double density);

/// (log(1/epsilon - 1) + alpha) / span^2: the slope giving probability epsilon
/// at temporal distance `span`.
double beta_for_span(double alpha, double span, double epsilon);

struct RewireResult {
    TimestampedGraph graph;
    std::size_t selected = 0;
    std::size_t skipped = 0;
};

/// Moves one endpoint of round(fraction * |E|) distinct edges to a uniformly
/// drawn vertex, keeping the date. Self-loops and duplicate pairs are
/// resampled; an edge is left intact after 100 failed draws.
RewireResult rewire(const TimestampedGraph& graph, double fraction, Rng& rng);

struct Component {
    TimestampedGraph graph;
    std::vector<Vertex> original_ids;
};

/// Induced subgraph on the largest connected component, relabelled
/// 0..m-1 in increasing original id. Ties go to the component holding the
/// smallest vertex id.
Component largest_connected_component(const TimestampedGraph& graph);

/// Draws a ground-truthed network: uniform activity dates, independent
/// logistic edges, Gaussian or uniform edge dates, optional rewiring, then
/// the largest component. Deterministic in `config.seed`.
SimOutput generate(const SimConfig& config);

}  // namespace actdate
