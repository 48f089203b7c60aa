#pragma once

#include <vector>

#include "actdate/graph.hpp"

namespace actdate {

/// Scalar parameters of the latent date model.
///
/// The log-odds of a connection between i and j is
/// `alpha - beta * (z_i - z_j)^2`; an edge date is Gaussian around the
/// midpoint of the two activity dates with standard deviation `sigma`.
struct ModelParams {
    double alpha = 0.0;
    double beta = 1.0;   // years^-2
    double sigma = 1.0;  // years

    bool valid() const;
    /// Throws InvalidInput unless beta > 0, sigma > 0 and everything is finite.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// log(1 + e^x) without overflow.
double softplus(double x);
/// 1 / (1 + e^-x) without overflow.
double sigmoid(double x);

double connection_logit(double zi, double zj, const ModelParams& params);
double connection_probability(double zi, double zj, const ModelParams& params);

/// Per-edge date term `-log sigma - (d - (zi+zj)/2)^2 / (2 sigma^2)`.
/// The Gaussian normalising constant is dropped.
double date_log_density(double date, double zi, double zj, double sigma);

/// Log-likelihood of the observed graph, summed over unordered pairs.
///
/// The connection term runs over every pair i < j, the date term over edges
/// only. A graph with fewer than two vertices has an empty sum (0).
double log_likelihood(const TimestampedGraph& graph, const LatentDates& z, const ModelParams& params);

struct LikelihoodGradient {
    std::vector<double> z;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
};

/// Analytic partial derivatives of log_likelihood.
LikelihoodGradient log_likelihood_gradient(const TimestampedGraph& graph, const LatentDates& z,
                                           const ModelParams& params);

/// Value and gradient from one pass over the pairs.
double log_likelihood_and_gradient(const TimestampedGraph& graph, const LatentDates& z,
                                   const ModelParams& params, LikelihoodGradient& grad);

}  // namespace actdate
