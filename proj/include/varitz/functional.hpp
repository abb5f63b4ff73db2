#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "varitz/ansatz.hpp"
#include "varitz/quadrature.hpp"
#include "varitz/transform.hpp"

namespace varitz {

// Lagrangian density L(y, dy, x) with analytic partial derivatives.
// y is the m-vector of trial values, dy the row-major m x n gradient in
// Omega-coordinates, x the point in Omega.
struct LagrangianSpec {
    std::size_t out_dim = 1;
    std::function<double(const double* y, const double* dy, const double* x)> eval;
    std::function<void(const double* y, const double* dy, const double* x,
                       double* out)> dL_dy;   // fills m
    std::function<void(const double* y, const double* dy, const double* x,
                       double* out)> dL_ddy;  // fills m x n
    std::string descriptor;
};

enum class PenaltyKind { boundary_mismatch, normalization };

// weight is beta for boundary-mismatch terms and gamma for the
// normalization term gamma * (int y^2 dx - 1)^2.
struct PenaltyTerm {
    PenaltyKind kind;
    double weight = 0.0;
};

// A fully assembled variational problem on the unit box: Lagrangian,
// affine map to Omega, quadrature rules, penalties, and the boundary data
// b-hat(u) = b(T(u)) used both as penalty target and residual reference.
struct Problem {
    LagrangianSpec lagrangian;
    AffineMap transform;
    QuadratureRuleND volume_rule;
    std::optional<FaceRule> faces;
    std::vector<PenaltyTerm> penalties;
    std::function<double(const double* u)> boundary_data;

    bool has_normalization() const {
        for (const auto& p : penalties)
            if (p.kind == PenaltyKind::normalization && p.weight != 0.0) return true;
        return false;
    }
    bool has_boundary_penalty() const {
        for (const auto& p : penalties)
            if (p.kind == PenaltyKind::boundary_mismatch && p.weight != 0.0) return true;
        return false;
    }
};

// One evaluation of the objective, split into its bookkeeping parts:
// total = volume + penalty_value where penalty_value collects every
// penalty term.  l2_norm_sq = int y^2 dx is accumulated whenever the
// problem carries a normalization penalty or lambda is being traced.
struct ActionBreakdown {
    double total = 0.0;
    double volume = 0.0;
    double l2_norm_sq = 0.0;
    double boundary_sq = 0.0; // integral of (y - b)^2 over the boundary
    double penalty_value = 0.0;
};

// Objective value at the trial's current parameters.
ActionBreakdown action_breakdown(const Problem& problem, const TrialFunction& trial,
                                 bool with_l2 = false);

// Objective and its analytic theta-gradient in one fused quadrature pass.
ActionBreakdown action_and_gradient(const Problem& problem, const TrialFunction& trial,
                                    std::vector<double>& grad_out,
                                    bool with_l2 = false);

// Convenience wrappers taking theta explicitly.
double action(const Problem& problem, TrialFunction& trial,
              const std::vector<double>& theta);
std::vector<double> action_gradient(const Problem& problem, TrialFunction& trial,
                                    const std::vector<double>& theta);

// (volume integral of the problem's Lagrangian) / (int y^2 dx); with the
// oscillator Lagrangian this is the Rayleigh quotient whose minimum over
// trial functions is the ground-state eigenvalue.  Throws std::domain_error
// on a zero denominator.
double rayleigh_quotient(const Problem& problem, TrialFunction& trial,
                         const std::vector<double>& theta);

// Max |y(u) - b(u)| over all face-rule points at current parameters.
double boundary_residual_max(const Problem& problem, const TrialFunction& trial);

// Built-in Lagrangians.
// L = y + (dy/dx)^2  (1-D)
LagrangianSpec example1_lagrangian();
// L = |grad y|^2 - f(x) y
LagrangianSpec poisson_lagrangian(std::function<double(const double*)> f,
                                  std::size_t n);
// L = |grad y|^2 + |x|^2 y^2; squared_potential=false gives the literal
// linear-in-y variant |grad y|^2 + |x|^2 y (not scale-invariant; off by
// default and documented as such).
LagrangianSpec oscillator_lagrangian(std::size_t n, bool squared_potential = true);

} // namespace varitz
