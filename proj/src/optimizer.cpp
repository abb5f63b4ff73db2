#include "varitz/optimizer.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "varitz/quadrature.hpp"

namespace varitz {

std::vector<double> gd_step(const std::vector<double>& theta,
                            const std::vector<double>& grad, double eta) {
    if (theta.size() != grad.size())
        throw std::invalid_argument("gd_step: size mismatch");
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        out[i] = theta[i] - eta * grad[i];
    return out;
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        double a = std::fabs(x);
        if (!(a <= m)) m = a; // propagates NaN into m
    }
    return m;
}

} // namespace

TrainTrace train(const Problem& problem, TrialFunction& trial,
                 const TrainConfig& config) {
    if (config.record_every == 0)
        throw std::invalid_argument("train: record_every must be positive");

    const std::size_t P = trial.param_count();
    std::vector<double> theta = trial.params();
    std::vector<double> grad(P, 0.0);

    TrainTrace tr;
    const std::size_t rows = config.max_iters / config.record_every + 2;
    tr.iters.reserve(rows);
    tr.action.reserve(rows);
    tr.grad_norm.reserve(rows);
    tr.boundary_residual.reserve(rows);
    if (config.record_lambda) tr.lambda.reserve(rows);

    auto record = [&](std::size_t it, const ActionBreakdown& bd, double gmax) {
        tr.iters.push_back(it);
        tr.action.push_back(bd.total);
        tr.grad_norm.push_back(gmax);
        tr.boundary_residual.push_back(boundary_residual_max(problem, trial));
        if (config.record_lambda)
            tr.lambda.push_back(bd.l2_norm_sq != 0.0 ? bd.volume / bd.l2_norm_sq
                                                     : std::numeric_limits<double>::quiet_NaN());
    };

    for (std::size_t it = 0; it < config.max_iters; ++it) {
        ActionBreakdown bd;
        double gmax;
        try {
            bd = action_and_gradient(problem, trial, grad, config.record_lambda);
            gmax = max_abs(grad);
        } catch (const NumericFailure&) {
            tr.diverged = true;
            break;
        }
        if (!std::isfinite(bd.total) || !std::isfinite(gmax)) {
            tr.diverged = true;
            break;
        }
        if (it % config.record_every == 0) record(it, bd, gmax);

        theta = gd_step(theta, grad, config.learning_rate);
        trial.set_params(theta);
        tr.completed_iters = it + 1;
    }

    if (!tr.diverged) {
        // Final state after the last update, as its own trace row.
        try {
            ActionBreakdown bd = action_and_gradient(problem, trial, grad, config.record_lambda);
            double gmax = max_abs(grad);
            if (std::isfinite(bd.total) && std::isfinite(gmax))
                record(config.max_iters, bd, gmax);
            else
                tr.diverged = true;
        } catch (const NumericFailure&) {
            tr.diverged = true;
        }
    }

    tr.final_theta = std::move(theta);
    return tr;
}

namespace {

// Round to `digits` significant decimal digits; non-finite maps to NaN so it
// never compares equal to anything.
double round_signif(double x, int digits) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 0.0;
    const double mag = std::floor(std::log10(std::fabs(x)));
    const double s = std::pow(10.0, static_cast<double>(digits - 1) - mag);
    return std::round(x * s) / s;
}

} // namespace

std::optional<std::size_t> convergence_iteration(const std::vector<std::size_t>& iters,
                                                 const std::vector<double>& values,
                                                 int significant_digits,
                                                 std::size_t window) {
    if (values.empty() || iters.size() != values.size()) return std::nullopt;
    const std::size_t n = values.size();
    const double target = round_signif(values[n - 1], significant_digits);
    if (std::isnan(target)) return std::nullopt;

    // First row from which every later value keeps rounding to the final
    // mantissa -- scan backwards to find where the plateau starts.
    std::size_t first = n; // one past the end = no plateau
    for (std::size_t r = n; r-- > 0;) {
        if (round_signif(values[r], significant_digits) == target)
            first = r;
        else
            break;
    }
    if (first == n) return std::nullopt;
    if (first == 0) return iters[0];
    if (n - 1 - first >= window) return iters[first];
    return std::nullopt;
}

std::optional<std::size_t> convergence_iteration(const TrainTrace& trace,
                                                 int significant_digits,
                                                 std::size_t window) {
    return convergence_iteration(trace.iters, trace.action, significant_digits,
                                 window);
}

} // namespace varitz
