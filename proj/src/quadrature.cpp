#include "varitz/quadrature.hpp"

#include <cmath>

namespace varitz {

namespace {

// Legendre P_k(t) and its derivative on [-1,1] via the three-term
// recurrence (n+1)P_{n+1} = (2n+1) t P_n - n P_{n-1}.
void legendre_eval(std::size_t k, double t, double& p, double& dp) {
    double p0 = 1.0, p1 = t;
    if (k == 0) { p = p0; dp = 0.0; return; }
    for (std::size_t n = 1; n < k; ++n) {
        const double p2 = ((2.0 * n + 1.0) * t * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    // derivative identity: (1-t^2) P_k' = k (P_{k-1} - t P_k)
    dp = k * (p0 - t * p1) / (1.0 - t * t);
}

} // namespace

QuadratureRule1D gauss_legendre_rule(std::size_t k) {
    if (k == 0) throw std::invalid_argument("gauss_legendre_rule: k must be >= 1");

    QuadratureRule1D rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);

    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < k; ++i) {
        // Chebyshev-style initial guess for the i-th root (ascending in t).
        double t = std::cos(pi * (static_cast<double>(k - i) - 0.25) /
                            (static_cast<double>(k) + 0.5));
        double p = 0.0, dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre_eval(k, t, p, dp);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        legendre_eval(k, t, p, dp);
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        // map [-1,1] -> [0,1]: u = (t+1)/2, du = dt/2
        rule.nodes[i] = 0.5 * (t + 1.0);
        rule.weights[i] = 0.5 * w;
    }
    // k = 1 leaves the guess loop with t = cos-based seed; enforce exactness.
    if (k == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

QuadratureRuleND tensor_rule(const QuadratureRule1D& rule, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("tensor_rule: dim must be >= 1");

    const std::size_t k = rule.nodes.size();
    std::size_t count = 1;
    for (std::size_t d = 0; d < dim; ++d) count *= k;

    QuadratureRuleND nd;
    nd.dim = dim;
    nd.points.reserve(count);
    nd.weights.reserve(count);

    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t p = 0; p < count; ++p) {
        std::vector<double> point(dim);
        double w = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
            point[d] = rule.nodes[idx[d]];
            w *= rule.weights[idx[d]];
        }
        nd.points.push_back(std::move(point));
        nd.weights.push_back(w);
        // odometer increment, last coordinate fastest
        for (std::size_t d = dim; d-- > 0;) {
            if (++idx[d] < k) break;
            idx[d] = 0;
        }
    }
    return nd;
}

FaceRule face_rule(const QuadratureRule1D& rule, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("face_rule: dim must be >= 1");

    FaceRule fr;
    fr.dim = dim;

    if (dim == 1) {
        fr.face_points = {{{0.0}}, {{1.0}}};
        fr.face_weights = {{1.0}, {1.0}};
        fr.face_axis = {0, 0};
        fr.face_value = {0.0, 1.0};
        return fr;
    }

    const QuadratureRuleND panel = tensor_rule(rule, dim - 1);
    for (std::size_t axis = 0; axis < dim; ++axis) {
        for (int side = 0; side < 2; ++side) {
            const double fixed = (side == 0) ? 0.0 : 1.0;
            std::vector<std::vector<double>> pts;
            pts.reserve(panel.points.size());
            for (const auto& q : panel.points) {
                std::vector<double> point(dim);
                std::size_t j = 0;
                for (std::size_t d = 0; d < dim; ++d)
                    point[d] = (d == axis) ? fixed : q[j++];
                pts.push_back(std::move(point));
            }
            fr.face_points.push_back(std::move(pts));
            fr.face_weights.push_back(panel.weights);
            fr.face_axis.push_back(axis);
            fr.face_value.push_back(fixed);
        }
    }
    return fr;
}

double integrate(const QuadratureRuleND& rule,
                 const std::function<double(const std::vector<double>&)>& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        const double v = f(rule.points[i]);
        if (!std::isfinite(v))
            throw NumericFailure("integrate: non-finite integrand value", rule.points[i]);
        sum += rule.weights[i] * v;
    }
    return sum;
}

} // namespace varitz
