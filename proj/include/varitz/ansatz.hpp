#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "varitz/blending.hpp"
#include "varitz/network.hpp"
#include "varitz/transform.hpp"

namespace varitz {

// A parametric trial function y(u, theta) on the unit box, exposing the same
// derivative set as Network.  Both the boundary-conforming ansatz and the
// bare-network baseline implement this, so the functional and optimizer
// modules are agnostic to how boundary conditions are handled.
class TrialFunction {
public:
    virtual ~TrialFunction() = default;

    virtual std::size_t in_dim() const = 0;
    virtual std::size_t out_dim() const = 0;
    virtual std::size_t param_count() const = 0;

    virtual const std::vector<double>& params() const = 0;
    virtual void set_params(const std::vector<double>& theta) = 0;

    virtual const Network& network() const = 0;

    // Fused evaluation (buffers row-major, nullptr skips a block):
    //   y:      out_dim
    //   dy_du:  out_dim x in_dim       derivative w.r.t. the unit-box u
    //   dy_dth: out_dim x P
    //   mixed:  out_dim x P x in_dim   d2 y / d theta d u
    virtual void eval_all(const double* u, double* y, double* dy_du,
                          double* dy_dth, double* mixed) const = 0;

    void eval_value(const double* u, double* y) const {
        eval_all(u, y, nullptr, nullptr, nullptr);
    }

    // Allocating wrappers (tests, reporting).
    std::vector<double> eval(const std::vector<double>& u) const;
    std::vector<double> grad_u(const std::vector<double>& u) const;
    std::vector<double> grad_theta(const std::vector<double>& u) const;
    std::vector<double> mixed_theta_u(const std::vector<double>& u) const;
};

// Boundary-conforming ansatz y(u) = B(v) + p(v) * N_net(v), v = input_map(u).
// The polynomial factor p vanishes on the boundary, so every iterate matches
// the prescribed boundary data exactly regardless of theta.  The optional
// input_map lets the extension, factor, and network live on a scaled box
// (Example 3 evaluates all three on [-3,3]^3) while u stays in [0,1]^n.
class ConformingTrial : public TrialFunction {
public:
    ConformingTrial(BoundaryExtension extension, PolynomialFactor factor,
                    std::unique_ptr<Network> net,
                    std::optional<AffineMap> input_map = std::nullopt);

    std::size_t in_dim() const override { return n_; }
    std::size_t out_dim() const override { return 1; }
    std::size_t param_count() const override { return net_->param_count(); }

    const std::vector<double>& params() const override { return net_->params(); }
    void set_params(const std::vector<double>& theta) override {
        net_->set_params(theta);
    }

    const Network& network() const override { return *net_; }

    void eval_all(const double* u, double* y, double* dy_du,
                  double* dy_dth, double* mixed) const override;

private:
    BoundaryExtension ext_;
    PolynomialFactor factor_;
    std::unique_ptr<Network> net_;
    std::optional<AffineMap> map_;
    std::size_t n_;
};

// Bare network baseline y(u) = N_net(v), v = input_map(u); boundary values
// are whatever the network produces (to be penalized by the functional).
class BareNetTrial : public TrialFunction {
public:
    explicit BareNetTrial(std::unique_ptr<Network> net,
                          std::optional<AffineMap> input_map = std::nullopt);

    std::size_t in_dim() const override { return n_; }
    std::size_t out_dim() const override { return net_->out_dim(); }
    std::size_t param_count() const override { return net_->param_count(); }

    const std::vector<double>& params() const override { return net_->params(); }
    void set_params(const std::vector<double>& theta) override {
        net_->set_params(theta);
    }

    const Network& network() const override { return *net_; }

    void eval_all(const double* u, double* y, double* dy_du,
                  double* dy_dth, double* mixed) const override;

private:
    std::unique_ptr<Network> net_;
    std::optional<AffineMap> map_;
    std::size_t n_;
};

} // namespace varitz
