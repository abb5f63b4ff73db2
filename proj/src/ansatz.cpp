#include "varitz/ansatz.hpp"

#include <stdexcept>

namespace varitz {

std::vector<double> TrialFunction::eval(const std::vector<double>& u) const {
    std::vector<double> y(out_dim());
    eval_all(u.data(), y.data(), nullptr, nullptr, nullptr);
    return y;
}

std::vector<double> TrialFunction::grad_u(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), g(out_dim() * in_dim());
    eval_all(u.data(), y.data(), g.data(), nullptr, nullptr);
    return g;
}

std::vector<double> TrialFunction::grad_theta(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), g(out_dim() * param_count());
    eval_all(u.data(), y.data(), nullptr, g.data(), nullptr);
    return g;
}

std::vector<double> TrialFunction::mixed_theta_u(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), gth(out_dim() * param_count()),
        g(out_dim() * param_count() * in_dim());
    eval_all(u.data(), y.data(), nullptr, gth.data(), g.data());
    return g;
}

ConformingTrial::ConformingTrial(BoundaryExtension extension, PolynomialFactor factor,
                                 std::unique_ptr<Network> net,
                                 std::optional<AffineMap> input_map)
    : ext_(std::move(extension)), factor_(std::move(factor)),
      net_(std::move(net)), map_(std::move(input_map)) {
    n_ = net_->in_dim();
    if (net_->out_dim() != 1)
        throw std::invalid_argument("ConformingTrial: scalar-valued networks only");
    if (ext_.dim != n_ || factor_.dim != n_)
        throw std::invalid_argument("ConformingTrial: dimension mismatch");
    if (map_ && map_->dim() != n_)
        throw std::invalid_argument("ConformingTrial: input_map dimension mismatch");
}

void ConformingTrial::eval_all(const double* u, double* y, double* dy_du,
                               double* dy_dth, double* mixed) const {
    const std::size_t n = n_;
    const std::size_t P = net_->param_count();

    thread_local std::vector<double> scratch;
    const bool need_grad = dy_du || mixed;
    scratch.assign(n /*v*/ + 1 /*Nv*/ + n /*dN_dv*/ + n /*dp*/ + n /*dB*/, 0.0);
    double* v = scratch.data();
    double* Nv = v + n;
    double* dN_dv = Nv + 1;
    double* dp = dN_dv + n;
    double* dB = dp + n;

    if (map_) map_->map_into(u, v);
    else for (std::size_t j = 0; j < n; ++j) v[j] = u[j];

    // network derivatives arrive in v-coordinates, written into the caller's
    // buffers and then combined/chain-ruled in place
    net_->eval_all(v, Nv, need_grad ? dN_dv : nullptr, dy_dth, mixed);

    const double pv = factor_.value(v);
    const double Bv = ext_.value(v);
    y[0] = Bv + pv * Nv[0];

    if (need_grad) {
        factor_.gradient(v, dp);
        ext_.gradient(v, dB);
    }

    if (dy_du) {
        for (std::size_t j = 0; j < n; ++j) {
            double g = dB[j] + dp[j] * Nv[0] + pv * dN_dv[j];
            if (map_) g *= map_->scale[j];
            dy_du[j] = g;
        }
    }

    if (mixed) {
        // mixed currently holds d2N/dtheta dv; dy_dth still holds dN/dtheta
        if (!dy_dth)
            throw std::invalid_argument(
                "ConformingTrial: mixed evaluation requires the dy_dth buffer");
        for (std::size_t s = 0; s < P; ++s) {
            const double gth = dy_dth[s];
            double* row = mixed + s * n;
            for (std::size_t j = 0; j < n; ++j) {
                double g = dp[j] * gth + pv * row[j];
                if (map_) g *= map_->scale[j];
                row[j] = g;
            }
        }
    }

    if (dy_dth) {
        for (std::size_t s = 0; s < P; ++s) dy_dth[s] *= pv;
    }
}

BareNetTrial::BareNetTrial(std::unique_ptr<Network> net,
                           std::optional<AffineMap> input_map)
    : net_(std::move(net)), map_(std::move(input_map)) {
    n_ = net_->in_dim();
    if (map_ && map_->dim() != n_)
        throw std::invalid_argument("BareNetTrial: input_map dimension mismatch");
}

void BareNetTrial::eval_all(const double* u, double* y, double* dy_du,
                            double* dy_dth, double* mixed) const {
    const std::size_t n = n_;
    const std::size_t m = net_->out_dim();
    const std::size_t P = net_->param_count();

    if (!map_) {
        net_->eval_all(u, y, dy_du, dy_dth, mixed);
        return;
    }

    thread_local std::vector<double> v;
    v.assign(n, 0.0);
    map_->map_into(u, v.data());
    net_->eval_all(v.data(), y, dy_du, dy_dth, mixed);

    if (dy_du)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dy_du[i * n + j] *= map_->scale[j];
    if (mixed)
        for (std::size_t s = 0; s < m * P; ++s)
            for (std::size_t j = 0; j < n; ++j)
                mixed[s * n + j] *= map_->scale[j];
}

} // namespace varitz
