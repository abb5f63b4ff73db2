#include "varitz/network.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "varitz/rng.hpp"

namespace varitz {

std::vector<double> Network::forward(const std::vector<double>& u) const {
    std::vector<double> y(out_dim());
    eval_all(u.data(), y.data(), nullptr, nullptr, nullptr);
    return y;
}

std::vector<double> Network::grad_input(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), g(out_dim() * in_dim());
    eval_all(u.data(), y.data(), g.data(), nullptr, nullptr);
    return g;
}

std::vector<double> Network::grad_params(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), g(out_dim() * param_count());
    eval_all(u.data(), y.data(), nullptr, g.data(), nullptr);
    return g;
}

std::vector<double> Network::mixed_second(const std::vector<double>& u) const {
    std::vector<double> y(out_dim()), g(out_dim() * param_count() * in_dim());
    eval_all(u.data(), y.data(), nullptr, nullptr, g.data());
    return g;
}

SingleLayerNet::SingleLayerNet(std::size_t m, std::size_t n, std::size_t N)
    : m_(m), n_(n), width_(N), theta_(m * N * (n + 2), 0.0) {
    if (m == 0 || n == 0 || N == 0)
        throw std::invalid_argument("SingleLayerNet: dimensions must be positive");
}

void SingleLayerNet::set_params(const std::vector<double>& theta) {
    if (theta.size() != theta_.size())
        throw std::invalid_argument("SingleLayerNet::set_params: size mismatch");
    theta_ = theta;
}

void SingleLayerNet::eval_all(const double* u, double* y, double* dy_du,
                              double* dy_dth, double* mixed) const {
    const std::size_t m = m_, n = n_, N = width_, P = theta_.size();
    const double* alpha = theta_.data() + alpha_off();
    const double* wall = theta_.data() + w_off();
    const double* ball = theta_.data() + b_off();

    if (dy_du) std::memset(dy_du, 0, sizeof(double) * m * n);
    if (dy_dth) std::memset(dy_dth, 0, sizeof(double) * m * P);
    if (mixed) std::memset(mixed, 0, sizeof(double) * m * P * n);

    for (std::size_t i = 0; i < m; ++i) {
        double yi = 0.0;
        double* gu = dy_du ? dy_du + i * n : nullptr;
        for (std::size_t l = 0; l < N; ++l) {
            const std::size_t il = i * N + l;
            const double a = alpha[il];
            const double* w = wall + il * n;
            double z = ball[il];
            for (std::size_t j = 0; j < n; ++j) z += w[j] * u[j];
            const double t = std::tanh(z);
            const double s = 1.0 - t * t;   // tanh'
            const double sp = -2.0 * t * s; // tanh''
            yi += a * t;
            if (gu) {
                const double as = a * s;
                for (std::size_t j = 0; j < n; ++j) gu[j] += as * w[j];
            }
            if (dy_dth) {
                double* row = dy_dth + i * P;
                row[alpha_off() + il] = t;
                double* gw = row + w_off() + il * n;
                const double as = a * s;
                for (std::size_t j = 0; j < n; ++j) gw[j] = as * u[j];
                row[b_off() + il] = as;
            }
            if (mixed) {
                // layout: mixed[i*P*n + s*n + j]
                double* base = mixed + i * P * n;
                double* ma = base + (alpha_off() + il) * n;
                double* mw = base + (w_off() + il * n) * n;
                double* mb = base + (b_off() + il) * n;
                const double asp = a * sp;
                for (std::size_t j = 0; j < n; ++j) {
                    ma[j] = s * w[j];
                    mb[j] = asp * w[j];
                }
                for (std::size_t jp = 0; jp < n; ++jp) {
                    double* mwj = mw + jp * n;
                    const double ujp_asp = asp * u[jp];
                    for (std::size_t j = 0; j < n; ++j)
                        mwj[j] = ujp_asp * w[j];
                    mwj[jp] += a * s;
                }
            }
        }
        y[i] = yi;
    }
}

TwoLayerNet::TwoLayerNet(std::size_t m, std::size_t n, std::size_t N)
    : m_(m), n_(n), width_(N),
      theta_(m * N + N * n + N * N + 2 * N, 0.0) {
    if (m == 0 || n == 0 || N == 0)
        throw std::invalid_argument("TwoLayerNet: dimensions must be positive");
}

void TwoLayerNet::set_params(const std::vector<double>& theta) {
    if (theta.size() != theta_.size())
        throw std::invalid_argument("TwoLayerNet::set_params: size mismatch");
    theta_ = theta;
}

void TwoLayerNet::eval_all(const double* u, double* y, double* dy_du,
                           double* dy_dth, double* mixed) const {
    const std::size_t m = m_, n = n_, N = width_, P = theta_.size();
    const double* A = theta_.data() + a_off();
    const double* W1 = theta_.data() + w1_off(); // [k*n + j]
    const double* W2 = theta_.data() + w2_off(); // [l*N + k]
    const double* b1 = theta_.data() + b1_off();
    const double* b2 = theta_.data() + b2_off();

    thread_local std::vector<double> scratch;
    scratch.assign(4 * N + N * n + N + N * n, 0.0);
    double* h1 = scratch.data();
    double* s1 = h1 + N;
    double* h2 = s1 + N;
    double* s2 = h2 + N;
    double* D = s2 + N;      // D[l*n+j] = d z2_l / d u_j
    double* c = D + N * n;   // c[k] = sum_l A_il s2_l W2_lk   (per output i)
    double* e = c + N;       // e[k*n+j] = sum_l A_il sp2_l D_lj W2_lk

    for (std::size_t k = 0; k < N; ++k) {
        double z = b1[k];
        const double* w = W1 + k * n;
        for (std::size_t j = 0; j < n; ++j) z += w[j] * u[j];
        h1[k] = std::tanh(z);
        s1[k] = 1.0 - h1[k] * h1[k];
    }
    for (std::size_t l = 0; l < N; ++l) {
        double z = b2[l];
        const double* w = W2 + l * N;
        for (std::size_t k = 0; k < N; ++k) z += w[k] * h1[k];
        h2[l] = std::tanh(z);
        s2[l] = 1.0 - h2[l] * h2[l];
        double* Dl = D + l * n;
        for (std::size_t j = 0; j < n; ++j) Dl[j] = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double c1 = w[k] * s1[k];
            const double* w1k = W1 + k * n;
            for (std::size_t j = 0; j < n; ++j) Dl[j] += c1 * w1k[j];
        }
    }

    if (dy_du) std::memset(dy_du, 0, sizeof(double) * m * n);
    if (dy_dth) std::memset(dy_dth, 0, sizeof(double) * m * P);
    if (mixed) std::memset(mixed, 0, sizeof(double) * m * P * n);

    for (std::size_t i = 0; i < m; ++i) {
        const double* Ai = A + i * N;
        double yi = 0.0;
        for (std::size_t l = 0; l < N; ++l) yi += Ai[l] * h2[l];
        y[i] = yi;

        if (dy_du) {
            double* gu = dy_du + i * n;
            for (std::size_t l = 0; l < N; ++l) {
                const double f = Ai[l] * s2[l];
                const double* Dl = D + l * n;
                for (std::size_t j = 0; j < n; ++j) gu[j] += f * Dl[j];
            }
        }

        const bool need_ce = (dy_dth != nullptr) || (mixed != nullptr);
        if (need_ce) {
            for (std::size_t k = 0; k < N; ++k) c[k] = 0.0;
            std::memset(e, 0, sizeof(double) * N * n);
            for (std::size_t l = 0; l < N; ++l) {
                const double f = Ai[l] * s2[l];
                const double fp = Ai[l] * (-2.0 * h2[l] * s2[l]);
                const double* w2l = W2 + l * N;
                const double* Dl = D + l * n;
                for (std::size_t k = 0; k < N; ++k) {
                    c[k] += f * w2l[k];
                    double* ek = e + k * n;
                    const double fw = fp * w2l[k];
                    for (std::size_t j = 0; j < n; ++j) ek[j] += fw * Dl[j];
                }
            }
        }

        if (dy_dth) {
            double* row = dy_dth + i * P;
            for (std::size_t l = 0; l < N; ++l) {
                row[a_off() + i * N + l] = h2[l];
                const double f = Ai[l] * s2[l];
                double* gw2 = row + w2_off() + l * N;
                for (std::size_t k = 0; k < N; ++k) gw2[k] = f * h1[k];
                row[b2_off() + l] = f;
            }
            for (std::size_t k = 0; k < N; ++k) {
                const double cs = c[k] * s1[k];
                double* gw1 = row + w1_off() + k * n;
                for (std::size_t j = 0; j < n; ++j) gw1[j] = cs * u[j];
                row[b1_off() + k] = cs;
            }
        }

        if (mixed) {
            double* base = mixed + i * P * n;
            for (std::size_t l = 0; l < N; ++l) {
                const double f = Ai[l] * s2[l];
                const double fp = Ai[l] * (-2.0 * h2[l] * s2[l]);
                const double* Dl = D + l * n;
                const double* w2l = W2 + l * N;
                double* ma = base + (a_off() + i * N + l) * n;
                double* mb2 = base + (b2_off() + l) * n;
                for (std::size_t j = 0; j < n; ++j) {
                    ma[j] = s2[l] * Dl[j];
                    mb2[j] = fp * Dl[j];
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double* mw2 = base + (w2_off() + l * N + k) * n;
                    const double fw = fp * h1[k];
                    const double fs = f * s1[k];
                    const double* w1k = W1 + k * n;
                    for (std::size_t j = 0; j < n; ++j)
                        mw2[j] = fw * Dl[j] + fs * w1k[j];
                }
            }
            for (std::size_t k = 0; k < N; ++k) {
                const double* ek = e + k * n;
                const double csp = c[k] * (-2.0 * h1[k] * s1[k]);
                const double cs = c[k] * s1[k];
                const double* w1k = W1 + k * n;
                double* mb1 = base + (b1_off() + k) * n;
                for (std::size_t j = 0; j < n; ++j)
                    mb1[j] = ek[j] * s1[k] + csp * w1k[j];
                for (std::size_t jp = 0; jp < n; ++jp) {
                    double* mw1 = base + (w1_off() + k * n + jp) * n;
                    for (std::size_t j = 0; j < n; ++j)
                        mw1[j] = (ek[j] * s1[k] + csp * w1k[j]) * u[jp];
                    mw1[jp] += cs;
                }
            }
        }
    }
}

SingleLayerNet init_gaussian(std::size_t m, std::size_t n, std::size_t N,
                             double mean, double stddev, std::uint64_t seed) {
    if (stddev < 0.0)
        throw std::invalid_argument("init_gaussian: std must be >= 0");
    SingleLayerNet net(m, n, N);
    SplitMix64 gen(seed);
    std::vector<double> theta(net.param_count());
    for (double& v : theta) v = mean + stddev * gen.next_normal();
    net.set_params(theta);
    return net;
}

TwoLayerNet init_gaussian_two_layer(std::size_t m, std::size_t n, std::size_t N,
                                    double mean, double stddev, std::uint64_t seed) {
    if (stddev < 0.0)
        throw std::invalid_argument("init_gaussian_two_layer: std must be >= 0");
    TwoLayerNet net(m, n, N);
    SplitMix64 gen(seed);
    std::vector<double> theta(net.param_count());
    for (double& v : theta) v = mean + stddev * gen.next_normal();
    net.set_params(theta);
    return net;
}

} // namespace varitz
