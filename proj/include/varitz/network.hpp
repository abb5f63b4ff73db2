#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace varitz {

// Feed-forward tanh models with exact analytic derivatives.  Every model
// exposes value, input gradient, parameter gradient, and the mixed second
// derivative d2 y / d theta d u needed by the action gradient.
//
// Parameter vectors are flat.  Flattening order (fixed; optimizer traces and
// snapshot files depend on it):
//   single layer: all alpha row-major [i][l], then all w [i][l][j], then all
//                 b [i][l];
//   two layers:   output weights A [i][l], then W1 [k][j], then W2 [l][k],
//                 then b1 [k], then b2 [l].
class Network {
public:
    virtual ~Network() = default;

    virtual std::size_t in_dim() const = 0;
    virtual std::size_t out_dim() const = 0;
    virtual std::size_t param_count() const = 0;
    virtual std::size_t layer_count() const = 0; // hidden layers: 1 or 2
    virtual std::size_t width() const = 0;

    virtual const std::vector<double>& params() const = 0;
    virtual void set_params(const std::vector<double>& theta) = 0;

    virtual std::unique_ptr<Network> clone() const = 0;

    // Fused evaluation into caller-owned buffers (row-major):
    //   y:        out_dim
    //   dy_du:    out_dim x in_dim          (nullptr to skip)
    //   dy_dth:   out_dim x P               (nullptr to skip)
    //   mixed:    out_dim x P x in_dim      (nullptr to skip)
    virtual void eval_all(const double* u, double* y, double* dy_du,
                          double* dy_dth, double* mixed) const = 0;

    // Allocating wrappers used by tests and one-off call sites.
    std::vector<double> forward(const std::vector<double>& u) const;
    std::vector<double> grad_input(const std::vector<double>& u) const;
    std::vector<double> grad_params(const std::vector<double>& u) const;
    std::vector<double> mixed_second(const std::vector<double>& u) const;
};

// Single hidden layer: N_i(u) = sum_l alpha[i][l] * tanh(w[i][l].u + b[i][l]).
// No bias on the linear output layer.  P = m*N*(n+2).
class SingleLayerNet : public Network {
public:
    SingleLayerNet(std::size_t m, std::size_t n, std::size_t N);

    std::size_t in_dim() const override { return n_; }
    std::size_t out_dim() const override { return m_; }
    std::size_t param_count() const override { return theta_.size(); }
    std::size_t layer_count() const override { return 1; }
    std::size_t width() const override { return width_; }

    const std::vector<double>& params() const override { return theta_; }
    void set_params(const std::vector<double>& theta) override;

    std::unique_ptr<Network> clone() const override {
        return std::make_unique<SingleLayerNet>(*this);
    }

    void eval_all(const double* u, double* y, double* dy_du,
                  double* dy_dth, double* mixed) const override;

private:
    std::size_t m_, n_, width_;
    std::vector<double> theta_;

    // flat-layout offsets
    std::size_t alpha_off() const { return 0; }
    std::size_t w_off() const { return m_ * width_; }
    std::size_t b_off() const { return m_ * width_ * (1 + n_); }
};

// Two hidden layers of equal width N (used only by the Example 2 baseline):
//   h1 = tanh(W1 u + b1), h2 = tanh(W2 h1 + b2), y_i = sum_l A[i][l] h2[l].
// P = m*N + N*n + N*N + 2N.
class TwoLayerNet : public Network {
public:
    TwoLayerNet(std::size_t m, std::size_t n, std::size_t N);

    std::size_t in_dim() const override { return n_; }
    std::size_t out_dim() const override { return m_; }
    std::size_t param_count() const override { return theta_.size(); }
    std::size_t layer_count() const override { return 2; }
    std::size_t width() const override { return width_; }

    const std::vector<double>& params() const override { return theta_; }
    void set_params(const std::vector<double>& theta) override;

    std::unique_ptr<Network> clone() const override {
        return std::make_unique<TwoLayerNet>(*this);
    }

    void eval_all(const double* u, double* y, double* dy_du,
                  double* dy_dth, double* mixed) const override;

private:
    std::size_t m_, n_, width_;
    std::vector<double> theta_;

    std::size_t a_off() const { return 0; }
    std::size_t w1_off() const { return m_ * width_; }
    std::size_t w2_off() const { return w1_off() + width_ * n_; }
    std::size_t b1_off() const { return w2_off() + width_ * width_; }
    std::size_t b2_off() const { return b1_off() + width_; }
};

// Independent Normal(mean, std) entries in flattening order, drawn from the
// deterministic generator in rng.hpp; identical arguments give bit-identical
// parameters.
SingleLayerNet init_gaussian(std::size_t m, std::size_t n, std::size_t N,
                             double mean, double stddev, std::uint64_t seed);

TwoLayerNet init_gaussian_two_layer(std::size_t m, std::size_t n, std::size_t N,
                                    double mean, double stddev, std::uint64_t seed);

} // namespace varitz
