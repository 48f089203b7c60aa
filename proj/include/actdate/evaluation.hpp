#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "actdate/estimation.hpp"
#include "actdate/graph.hpp"
#include "actdate/simulation.hpp"

namespace actdate {

enum class Scenario { ideal, uniform, rewired };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view text);

struct ExperimentRecord {
    Scenario scenario = Scenario::ideal;
    double rewire_fraction = 0.0;
    double target_density = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_lcc = 0;
    std::size_t edges = 0;
    double edges_per_vertex = 0.0;
    double mse_local = 0.0;
    double mse_model = 0.0;
    double improvement = 0.0;
    bool converged = false;
    bool accepted = false;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct SmoothedCurve {
    std::vector<double> grid_x;
    std::vector<std::optional<double>> values;  // nullopt where every kernel weight vanished
    double bandwidth = 0.0;
};

double mse(const LatentDates& truth, const LatentDates& estimate);

/// mse_local - mse_model: positive when the model beats local averages.
double improvement(double mse_local, double mse_model);

/// Silverman's rule of thumb, 0.9 min(sd, IQR/1.34) n^(-1/5).
double silverman_bandwidth(std::span<const double> xs);

/// Nadaraya-Watson regression with a Gaussian kernel. Defaults: Silverman
/// bandwidth, 200 evenly spaced grid points over [min xs, max xs].
SmoothedCurve kernel_smooth(std::span<const double> xs, std::span<const double> ys,
                            std::optional<double> bandwidth = std::nullopt,
                            std::optional<std::vector<double>> grid = std::nullopt);

/// Smallest grid abscissa from which the curve stays non-negative up to the
/// end of the grid. Missing values are skipped.
std::optional<double> positive_crossing(const SmoothedCurve& curve);

struct ExperimentConfig {
    Scenario scenario = Scenario::ideal;
    std::size_t replicates = 100;
    double density_low = 0.1;
    double density_high = 0.5;
    double rewire_fraction = 0.0;  // used by the rewired scenario only
    std::uint64_t seed_base = 1;
    std::size_t threads = 1;  // 0 picks the hardware concurrency
    SimConfig base;           // n, ranges, life span, sigma, epsilon

    void validate() const;
};

/// Called with the replicate index after each successful fit, possibly from
/// several worker threads at once.
using FitObserver = std::function<void(std::size_t, const FitResult&)>;

/// Simulate-and-fit replicates. Replicate r is driven entirely by
/// seed_base + r, so the records do not depend on the thread count.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const FitConfig& fit_config = {},
                                             const FitObserver& observer = {});

/// A single replicate of run_experiment.
ExperimentRecord run_replicate(const ExperimentConfig& config, const FitConfig& fit_config, std::size_t index,
                               const FitObserver& observer = {});

struct ExperimentSummary {
    SmoothedCurve curve;
    std::optional<double> crossing;
    std::size_t used = 0;
};

/// Smooths improvement against edges per vertex over the accepted records,
/// optionally dropping those whose improvement is below `exclude_below`.
ExperimentSummary summarize(std::span<const ExperimentRecord> records, std::optional<double> bandwidth = std::nullopt,
                            std::optional<double> exclude_below = std::nullopt);

}  // namespace actdate
