#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace varitz {

// Diagonal affine map T: [0,1]^n -> Omega, x_j = scale_j * u_j + offset_j.
// Only axis-aligned boxes are supported; the Jacobian is diag(scale).
struct AffineMap {
    std::vector<double> scale;
    std::vector<double> offset;

    AffineMap() = default;
    AffineMap(std::vector<double> s, std::vector<double> o)
        : scale(std::move(s)), offset(std::move(o)) {
        if (scale.size() != offset.size())
            throw std::invalid_argument("AffineMap: scale/offset size mismatch");
        for (double v : scale)
            if (v == 0.0)
                throw std::invalid_argument("AffineMap: zero scale entry");
    }

    static AffineMap identity(std::size_t n) {
        return AffineMap(std::vector<double>(n, 1.0), std::vector<double>(n, 0.0));
    }

    // [0,1]^n -> [lo,hi]^n
    static AffineMap box(std::size_t n, double lo, double hi) {
        return AffineMap(std::vector<double>(n, hi - lo), std::vector<double>(n, lo));
    }

    std::size_t dim() const { return scale.size(); }

    std::vector<double> map(const std::vector<double>& u) const {
        std::vector<double> x(u.size());
        for (std::size_t j = 0; j < u.size(); ++j)
            x[j] = scale[j] * u[j] + offset[j];
        return x;
    }

    void map_into(const double* u, double* x) const {
        for (std::size_t j = 0; j < scale.size(); ++j)
            x[j] = scale[j] * u[j] + offset[j];
    }

    std::vector<double> inverse_map(const std::vector<double>& x) const {
        std::vector<double> u(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            u[j] = (x[j] - offset[j]) / scale[j];
        return u;
    }

    double jacobian_det_abs() const {
        double d = 1.0;
        for (double v : scale) d *= v;
        return d < 0.0 ? -d : d;
    }

    // Applies (J^-1)^T to a row-major m x n gradient taken in u-coordinates,
    // yielding the gradient in Omega-coordinates; diagonal J means dividing
    // column j by scale_j.
    void pullback_gradient(double* grad, std::size_t m) const {
        const std::size_t n = scale.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                grad[i * n + j] /= scale[j];
    }

    std::vector<double> pullback_gradient(const std::vector<double>& grad_u,
                                          std::size_t m) const {
        std::vector<double> g = grad_u;
        pullback_gradient(g.data(), m);
        return g;
    }
};

} // namespace varitz
