#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace varitz {

// Scalar polynomial factor p with gradient; vanishes identically on the
// boundary of its box so that p * N_net cannot disturb boundary values.
struct PolynomialFactor {
    std::size_t dim = 0;
    std::function<double(const double*)> value;
    std::function<void(const double*, double*)> gradient; // fills dim entries
    std::string descriptor;
};

// Scalar boundary extension B interpolating prescribed boundary data.
struct BoundaryExtension {
    std::size_t dim = 0;
    std::function<double(const double*)> value;
    std::function<void(const double*, double*)> gradient; // fills dim entries
    std::string descriptor;
};

// A curve with its derivative, used as one edge of a Coons patch.
struct EdgeFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

// p(u) = prod_j u_j (1 - u_j) on [0,1]^n.
PolynomialFactor unit_bubble(std::size_t n);

// c * p(u); sign/scale choices keep the boundary roots intact.
PolynomialFactor scaled_factor(PolynomialFactor p, double c);

// p(x) = prod_j (1 - (x_j / L)^2) on [-L,L]^n.
PolynomialFactor scaled_box_bubble(double L, std::size_t n);

// B(u) = (1-u) b0 + u b1 on [0,1].
BoundaryExtension linear_extension_1d(double b0, double b1);

// Transfinite interpolation on [0,1]^2 from the four edge curves
// e0 = b(0,.), e1 = b(1,.), f0 = b(.,0), f1 = b(.,1): the sum of the two
// lofts minus the bilinear corner term.  Corner values are read from the
// e-edges and must agree with the f-edges to 1e-10.
BoundaryExtension coons_patch(const EdgeFunction& e0, const EdgeFunction& e1,
                              const EdgeFunction& f0, const EdgeFunction& f1);

// B identically zero (homogeneous boundary data in any dimension).
BoundaryExtension zero_extension(std::size_t n);

} // namespace varitz
