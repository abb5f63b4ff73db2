#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "varitz/functional.hpp"

namespace varitz {

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t max_iters = 1;
    std::size_t record_every = 1;
    bool record_lambda = false; // also record volume/l2 along the trace
};

// Column-oriented training trace.  Row r describes the state at iteration
// iters[r] (before any further update); the last row is the final state.
struct TrainTrace {
    std::vector<std::size_t> iters;
    std::vector<double> action;
    std::vector<double> grad_norm;          // max-norm of the action gradient
    std::vector<double> boundary_residual;  // max over face-rule points
    std::vector<double> lambda;             // empty unless record_lambda
    std::vector<double> final_theta;
    bool diverged = false;
    std::size_t completed_iters = 0;
};

// theta' = theta - eta * grad, componentwise; exactly one vector update.
std::vector<double> gd_step(const std::vector<double>& theta,
                            const std::vector<double>& grad, double eta);

// Plain gradient descent for config.max_iters steps (no early stopping).
// Aborts with diverged status and a partial trace if the action or gradient
// becomes non-finite.  Deterministic: identical (problem, trial params,
// config) give identical traces.
TrainTrace train(const Problem& problem, TrialFunction& trial,
                 const TrainConfig& config);

// Smallest recorded iteration index k such that every recorded value from k
// through the end of the trace rounds to the same `significant_digits`-digit
// mantissa as the final value, provided the plateau spans at least `window`
// recorded rows (or starts at the first row); nullopt if never.  This is the
// artifact's operationalization of "d significant digits reached at
// iteration k"; comparisons between methods should use orderings only.
std::optional<std::size_t> convergence_iteration(const TrainTrace& trace,
                                                 int significant_digits,
                                                 std::size_t window);

std::optional<std::size_t> convergence_iteration(const std::vector<std::size_t>& iters,
                                                 const std::vector<double>& values,
                                                 int significant_digits,
                                                 std::size_t window);

} // namespace varitz
