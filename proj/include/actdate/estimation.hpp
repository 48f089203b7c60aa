#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "actdate/graph.hpp"
#include "actdate/model.hpp"

namespace actdate {

struct FitConfig {
    std::size_t max_iterations = 5000;
    double relative_tolerance = 1e-8;  // on |dL| / (|L| + 1)
    double initial_step = 1.0;
    double armijo_c = 1e-4;
    double backtracking_factor = 0.5;
    std::size_t max_backtracks = 50;
    double epsilon_init = 1e-6;
    double span_init = 100.0;   // years
    double sigma_init = 50.0;   // years

    void validate() const;
};

enum class StopReason {
    tolerance,        // relative objective change fell below the tolerance
    stationary,       // gradient numerically zero
    line_search,      // no ascent step found after the first iteration
    max_iterations,
    degenerate,       // gradient stopped being finite; the likelihood is unbounded (e.g. sigma -> 0)
};

struct FitResult {
    LatentDates z_hat;
    ModelParams params_hat;
    double initial_log_likelihood = 0.0;
    double final_log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    StopReason stop_reason = StopReason::max_iterations;
    /// Log-likelihood at the starting point followed by one value per accepted step.
    std::vector<double> trace;
};

/// Raised when the optimizer cannot take a single ascent step.
class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mean date of the edges incident to each vertex. Isolated vertices get the
/// mean of all edge dates; with no edges at all every entry is 0.
LatentDates local_average_init(const TimestampedGraph& graph);

/// sigma = sigma_init, alpha matches the observed density at equal dates,
/// beta brings the connection probability down to epsilon_init at span_init.
/// A complete graph is treated as missing half a pair. Throws InvalidInput
/// when there are no edges.
ModelParams default_param_init(const TimestampedGraph& graph, const FitConfig& config);

/// Maximum likelihood by gradient ascent over (z, alpha, log beta, log sigma)
/// with Armijo backtracking. Missing starting values default to
/// local_average_init and default_param_init.
FitResult fit(const TimestampedGraph& graph, const FitConfig& config = {},
              const std::optional<LatentDates>& init_z = std::nullopt,
              const std::optional<ModelParams>& init_params = std::nullopt);

}  // namespace actdate
