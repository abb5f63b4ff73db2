#include "varitz/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace varitz {

namespace {

double face_measure(const AffineMap& T, std::size_t axis) {
    double meas = 1.0;
    for (std::size_t j = 0; j < T.dim(); ++j)
        if (j != axis) meas *= std::abs(T.scale[j]);
    return meas;
}

struct PenaltyWeights {
    double beta = 0.0;
    double gamma = 0.0;
};

PenaltyWeights collect_weights(const Problem& problem) {
    PenaltyWeights w;
    for (const auto& p : problem.penalties) {
        if (p.weight < 0.0)
            throw std::invalid_argument("penalty weight must be nonnegative");
        if (p.kind == PenaltyKind::boundary_mismatch) w.beta += p.weight;
        else w.gamma += p.weight;
    }
    return w;
}

// Single implementation behind both action_breakdown and action_and_gradient;
// grad_out == nullptr skips every derivative buffer.
ActionBreakdown evaluate(const Problem& problem, const TrialFunction& trial,
                         std::vector<double>* grad_out, bool with_l2) {
    const std::size_t n = trial.in_dim();
    const std::size_t m = trial.out_dim();
    const std::size_t P = trial.param_count();
    if (problem.volume_rule.dim != n)
        throw std::invalid_argument("action: quadrature/trial dimension mismatch");
    if (problem.lagrangian.out_dim != m)
        throw std::invalid_argument("action: lagrangian/trial output mismatch");

    const PenaltyWeights pw = collect_weights(problem);
    const bool want_grad = grad_out != nullptr;
    const bool track_l2 = with_l2 || pw.gamma != 0.0;
    const double det = problem.transform.jacobian_det_abs();
    const auto& scale = problem.transform.scale;

    ActionBreakdown out;

    std::vector<double> y(m), dy(m * n), dyx(m * n), x(n);
    std::vector<double> Ly(m), Ldy(m * n);
    std::vector<double> dth, mixed, grad_vol, dI;
    if (want_grad) {
        dth.resize(m * P);
        mixed.resize(m * P * n);
        grad_vol.assign(P, 0.0);
        if (track_l2) dI.assign(P, 0.0);
    }

    const auto& rule = problem.volume_rule;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double* u = rule.points[q].data();
        trial.eval_all(u, y.data(), dy.data(),
                       want_grad ? dth.data() : nullptr,
                       want_grad ? mixed.data() : nullptr);
        problem.transform.map_into(u, x.data());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dyx[i * n + j] = dy[i * n + j] / scale[j];

        const double Lval = problem.lagrangian.eval(y.data(), dyx.data(), x.data());
        if (!std::isfinite(Lval))
            throw NumericFailure("action: non-finite Lagrangian value", rule.points[q]);
        const double wdet = rule.weights[q] * det;
        out.volume += wdet * Lval;

        if (track_l2) {
            double y2 = 0.0;
            for (std::size_t i = 0; i < m; ++i) y2 += y[i] * y[i];
            out.l2_norm_sq += wdet * y2;
        }

        if (want_grad) {
            problem.lagrangian.dL_dy(y.data(), dyx.data(), x.data(), Ly.data());
            problem.lagrangian.dL_ddy(y.data(), dyx.data(), x.data(), Ldy.data());
            for (std::size_t i = 0; i < m; ++i) {
                const double* gth = dth.data() + i * P;
                const double* mix = mixed.data() + i * P * n;
                const double wLy = wdet * Ly[i];
                for (std::size_t s = 0; s < P; ++s) {
                    double acc = wLy * gth[s];
                    const double* mrow = mix + s * n;
                    for (std::size_t j = 0; j < n; ++j)
                        acc += wdet * Ldy[i * n + j] * mrow[j] / scale[j];
                    grad_vol[s] += acc;
                }
                if (track_l2) {
                    const double wy2 = 2.0 * wdet * y[i];
                    for (std::size_t s = 0; s < P; ++s) dI[s] += wy2 * gth[s];
                }
            }
        }
    }

    std::vector<double> grad_bnd;
    if (pw.beta != 0.0) {
        if (!problem.faces)
            throw std::invalid_argument("boundary penalty requires a face rule");
        if (!problem.boundary_data)
            throw std::invalid_argument("boundary penalty requires boundary data");
        if (want_grad) grad_bnd.assign(P, 0.0);
        const FaceRule& fr = *problem.faces;
        for (std::size_t f = 0; f < fr.face_points.size(); ++f) {
            const double meas = face_measure(problem.transform, fr.face_axis[f]);
            for (std::size_t q = 0; q < fr.face_points[f].size(); ++q) {
                const double* u = fr.face_points[f][q].data();
                trial.eval_all(u, y.data(), nullptr,
                               want_grad ? dth.data() : nullptr, nullptr);
                const double r = y[0] - problem.boundary_data(u);
                if (!std::isfinite(r))
                    throw NumericFailure("action: non-finite boundary residual",
                                         fr.face_points[f][q]);
                const double wm = fr.face_weights[f][q] * meas;
                out.boundary_sq += wm * r * r;
                if (want_grad) {
                    const double c = 2.0 * wm * r;
                    for (std::size_t s = 0; s < P; ++s)
                        grad_bnd[s] += c * dth[s];
                }
            }
        }
    }

    out.penalty_value = pw.beta * out.boundary_sq;
    if (pw.gamma != 0.0) {
        const double defect = out.l2_norm_sq - 1.0;
        out.penalty_value += pw.gamma * defect * defect;
    }
    out.total = out.volume + out.penalty_value;

    if (want_grad) {
        grad_out->assign(P, 0.0);
        for (std::size_t s = 0; s < P; ++s) {
            double g = grad_vol[s];
            if (pw.beta != 0.0) g += pw.beta * grad_bnd[s];
            if (pw.gamma != 0.0)
                g += 2.0 * pw.gamma * (out.l2_norm_sq - 1.0) * dI[s];
            (*grad_out)[s] = g;
        }
    }
    return out;
}

} // namespace

ActionBreakdown action_breakdown(const Problem& problem, const TrialFunction& trial,
                                 bool with_l2) {
    return evaluate(problem, trial, nullptr, with_l2);
}

ActionBreakdown action_and_gradient(const Problem& problem, const TrialFunction& trial,
                                    std::vector<double>& grad_out, bool with_l2) {
    return evaluate(problem, trial, &grad_out, with_l2);
}

double action(const Problem& problem, TrialFunction& trial,
              const std::vector<double>& theta) {
    trial.set_params(theta);
    return action_breakdown(problem, trial).total;
}

std::vector<double> action_gradient(const Problem& problem, TrialFunction& trial,
                                    const std::vector<double>& theta) {
    trial.set_params(theta);
    std::vector<double> grad;
    action_and_gradient(problem, trial, grad);
    return grad;
}

double rayleigh_quotient(const Problem& problem, TrialFunction& trial,
                         const std::vector<double>& theta) {
    trial.set_params(theta);
    const ActionBreakdown b = action_breakdown(problem, trial, /*with_l2=*/true);
    if (b.l2_norm_sq <= 0.0)
        throw std::domain_error("rayleigh_quotient: degenerate state (zero L2 norm)");
    return b.volume / b.l2_norm_sq;
}

double boundary_residual_max(const Problem& problem, const TrialFunction& trial) {
    if (!problem.faces || !problem.boundary_data) return 0.0;
    const FaceRule& fr = *problem.faces;
    std::vector<double> y(trial.out_dim());
    double worst = 0.0;
    for (std::size_t f = 0; f < fr.face_points.size(); ++f)
        for (const auto& pt : fr.face_points[f]) {
            trial.eval_value(pt.data(), y.data());
            const double r = std::abs(y[0] - problem.boundary_data(pt.data()));
            if (r > worst) worst = r;
        }
    return worst;
}

LagrangianSpec example1_lagrangian() {
    LagrangianSpec L;
    L.out_dim = 1;
    L.descriptor = "y + (dy/dx)^2";
    L.eval = [](const double* y, const double* dy, const double*) {
        return y[0] + dy[0] * dy[0];
    };
    L.dL_dy = [](const double*, const double*, const double*, double* out) {
        out[0] = 1.0;
    };
    L.dL_ddy = [](const double*, const double* dy, const double*, double* out) {
        out[0] = 2.0 * dy[0];
    };
    return L;
}

LagrangianSpec poisson_lagrangian(std::function<double(const double*)> f,
                                  std::size_t n) {
    LagrangianSpec L;
    L.out_dim = 1;
    L.descriptor = "|grad y|^2 - f(x) y";
    L.eval = [f, n](const double* y, const double* dy, const double* x) {
        double g2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) g2 += dy[j] * dy[j];
        return g2 - f(x) * y[0];
    };
    L.dL_dy = [f](const double*, const double*, const double* x, double* out) {
        out[0] = -f(x);
    };
    L.dL_ddy = [n](const double*, const double* dy, const double*, double* out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = 2.0 * dy[j];
    };
    return L;
}

LagrangianSpec oscillator_lagrangian(std::size_t n, bool squared_potential) {
    LagrangianSpec L;
    L.out_dim = 1;
    L.descriptor = squared_potential ? "|grad y|^2 + |x|^2 y^2"
                                     : "|grad y|^2 + |x|^2 y (literal variant)";
    L.eval = [n, squared_potential](const double* y, const double* dy, const double* x) {
        double g2 = 0.0, x2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            g2 += dy[j] * dy[j];
            x2 += x[j] * x[j];
        }
        return g2 + x2 * (squared_potential ? y[0] * y[0] : y[0]);
    };
    L.dL_dy = [n, squared_potential](const double* y, const double*, const double* x,
                                     double* out) {
        double x2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) x2 += x[j] * x[j];
        out[0] = squared_potential ? 2.0 * x2 * y[0] : x2;
    };
    L.dL_ddy = [n](const double*, const double* dy, const double*, double* out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = 2.0 * dy[j];
    };
    return L;
}

} // namespace varitz
