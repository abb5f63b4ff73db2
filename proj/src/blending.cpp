#include "varitz/blending.hpp"

#include <cmath>
#include <stdexcept>

namespace varitz {

PolynomialFactor unit_bubble(std::size_t n) {
    if (n == 0) throw std::invalid_argument("unit_bubble: n must be >= 1");
    PolynomialFactor p;
    p.dim = n;
    p.descriptor = "prod_j u_j (1 - u_j)";
    p.value = [n](const double* u) {
        double v = 1.0;
        for (std::size_t j = 0; j < n; ++j) v *= u[j] * (1.0 - u[j]);
        return v;
    };
    p.gradient = [n](const double* u, double* g) {
        for (std::size_t j = 0; j < n; ++j) {
            double rest = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j) rest *= u[i] * (1.0 - u[i]);
            g[j] = (1.0 - 2.0 * u[j]) * rest;
        }
    };
    return p;
}

PolynomialFactor scaled_factor(PolynomialFactor p, double c) {
    PolynomialFactor out;
    out.dim = p.dim;
    out.descriptor =
        (c == -1.0 ? "-(" : std::to_string(c) + "*(") + p.descriptor + ")";
    out.value = [p, c](const double* u) { return c * p.value(u); };
    out.gradient = [p, c, n = p.dim](const double* u, double* g) {
        p.gradient(u, g);
        for (std::size_t j = 0; j < n; ++j) g[j] *= c;
    };
    return out;
}

PolynomialFactor scaled_box_bubble(double L, std::size_t n) {
    if (L <= 0.0) throw std::invalid_argument("scaled_box_bubble: L must be > 0");
    if (n == 0) throw std::invalid_argument("scaled_box_bubble: n must be >= 1");
    PolynomialFactor p;
    p.dim = n;
    p.descriptor = "prod_j (1 - (x_j/L)^2)";
    const double inv_L2 = 1.0 / (L * L);
    p.value = [n, inv_L2](const double* x) {
        double v = 1.0;
        for (std::size_t j = 0; j < n; ++j) v *= 1.0 - x[j] * x[j] * inv_L2;
        return v;
    };
    p.gradient = [n, inv_L2](const double* x, double* g) {
        for (std::size_t j = 0; j < n; ++j) {
            double rest = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j) rest *= 1.0 - x[i] * x[i] * inv_L2;
            g[j] = -2.0 * x[j] * inv_L2 * rest;
        }
    };
    return p;
}

BoundaryExtension linear_extension_1d(double b0, double b1) {
    BoundaryExtension ext;
    ext.dim = 1;
    ext.descriptor = "(1-u) b0 + u b1";
    ext.value = [b0, b1](const double* u) {
        return (1.0 - u[0]) * b0 + u[0] * b1;
    };
    ext.gradient = [b0, b1](const double*, double* g) { g[0] = b1 - b0; };
    return ext;
}

BoundaryExtension coons_patch(const EdgeFunction& e0, const EdgeFunction& e1,
                              const EdgeFunction& f0, const EdgeFunction& f1) {
    // corners from the u1-fixed edges; validate against the u2-fixed ones
    const double c00 = e0.value(0.0);
    const double c01 = e0.value(1.0);
    const double c10 = e1.value(0.0);
    const double c11 = e1.value(1.0);
    const double tol = 1e-10;
    if (std::abs(f0.value(0.0) - c00) > tol || std::abs(f1.value(0.0) - c01) > tol ||
        std::abs(f0.value(1.0) - c10) > tol || std::abs(f1.value(1.0) - c11) > tol)
        throw std::invalid_argument(
            "coons_patch: inconsistent boundary data (edge corner mismatch)");

    BoundaryExtension ext;
    ext.dim = 2;
    ext.descriptor = "Coons patch (two lofts minus bilinear corner term)";
    ext.value = [e0, e1, f0, f1, c00, c01, c10, c11](const double* u) {
        const double u1 = u[0], u2 = u[1];
        return (1.0 - u1) * e0.value(u2) + u1 * e1.value(u2)
             + (1.0 - u2) * f0.value(u1) + u2 * f1.value(u1)
             - ((1.0 - u1) * ((1.0 - u2) * c00 + u2 * c01)
                + u1 * ((1.0 - u2) * c10 + u2 * c11));
    };
    ext.gradient = [e0, e1, f0, f1, c00, c01, c10, c11](const double* u, double* g) {
        const double u1 = u[0], u2 = u[1];
        g[0] = e1.value(u2) - e0.value(u2)
             + (1.0 - u2) * f0.derivative(u1) + u2 * f1.derivative(u1)
             - (-((1.0 - u2) * c00 + u2 * c01) + ((1.0 - u2) * c10 + u2 * c11));
        g[1] = (1.0 - u1) * e0.derivative(u2) + u1 * e1.derivative(u2)
             + f1.value(u1) - f0.value(u1)
             - ((1.0 - u1) * (c01 - c00) + u1 * (c11 - c10));
    };
    return ext;
}

BoundaryExtension zero_extension(std::size_t n) {
    BoundaryExtension ext;
    ext.dim = n;
    ext.descriptor = "zero extension";
    ext.value = [](const double*) { return 0.0; };
    ext.gradient = [n](const double*, double* g) {
        for (std::size_t j = 0; j < n; ++j) g[j] = 0.0;
    };
    return ext;
}

} // namespace varitz
