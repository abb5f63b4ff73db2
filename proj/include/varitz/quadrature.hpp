#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace varitz {

// Thrown when an integrand returns a non-finite value; carries the offending
// quadrature point for diagnosis.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, std::vector<double> point)
        : std::runtime_error(what), point_(std::move(point)) {}
    const std::vector<double>& point() const { return point_; }

private:
    std::vector<double> point_;
};

// k-node Gauss-Legendre rule mapped affinely from [-1,1] to [0,1].
// Nodes are strictly increasing in (0,1); weights are positive and sum to 1.
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Tensor-product rule on the unit box [0,1]^dim.  points are stored as a
// flat array of dim-vectors; weights are the per-point products of the 1-D
// weights and sum to 1.
struct QuadratureRuleND {
    std::size_t dim = 0;
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

// Quadrature points on the boundary of [0,1]^dim: for each of the 2*dim
// faces, the (dim-1)-dimensional tensor rule with the fixed coordinate
// inserted.  face_axis[f] / face_value[f] identify which coordinate is
// pinned (to 0.0 or 1.0) on face f.  dim = 1 degenerates to the two
// endpoints with weight 1 each.
struct FaceRule {
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<double>>> face_points; // [face][pt][coord]
    std::vector<std::vector<double>> face_weights;             // [face][pt]
    std::vector<std::size_t> face_axis;                        // [face]
    std::vector<double> face_value;                            // [face]
};

// Nodes by Newton iteration on the Legendre recurrence, tolerance 1e-15,
// dependency-free and exact to machine precision for k <= 64.
QuadratureRule1D gauss_legendre_rule(std::size_t k);

QuadratureRuleND tensor_rule(const QuadratureRule1D& rule, std::size_t dim);

FaceRule face_rule(const QuadratureRule1D& rule, std::size_t dim);

// Plain weighted sum; throws NumericFailure if f is non-finite anywhere.
double integrate(const QuadratureRuleND& rule,
                 const std::function<double(const std::vector<double>&)>& f);

} // namespace varitz
