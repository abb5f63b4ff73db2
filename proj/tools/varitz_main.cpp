#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "varitz/experiments.hpp"
#include "varitz/io.hpp"
#include "varitz/rng.hpp"

namespace {

struct RunFlags {
    std::string method = "both";
    std::string out = "runs";
    std::string save_params_path;
    std::string load_params_path;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> neurons;
    std::optional<std::uint64_t> iters;
    std::optional<std::uint64_t> quad;
    std::optional<std::uint64_t> record_every;
    std::optional<double> lr;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> init_mean;
    std::optional<double> init_std;
    bool linear_potential = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--method", f.method, "ansatz | deep-ritz | both")
        ->check(CLI::IsMember({"ansatz", "deep-ritz", "both"}))
        ->capture_default_str();
    cmd->add_option("--neurons", f.neurons, "hidden width N (per-method default)");
    cmd->add_option("--iters", f.iters, "gradient descent iterations");
    cmd->add_option("--lr", f.lr, "learning rate");
    cmd->add_option("--beta", f.beta, "boundary penalty weight");
    cmd->add_option("--gamma", f.gamma, "normalization penalty weight");
    cmd->add_option("--quad", f.quad, "Gauss-Legendre nodes per axis");
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--out", f.out, "output root directory")
        ->capture_default_str();
    cmd->add_option("--record-every", f.record_every,
                    "trace recording stride (default 1)");
    cmd->add_option("--init-mean", f.init_mean, "Gaussian init mean");
    cmd->add_option("--init-std", f.init_std, "Gaussian init std");
    cmd->add_option("--save-params", f.save_params_path,
                    "also write final parameters to this path "
                    "(single-method runs only)");
    cmd->add_option("--load-params", f.load_params_path,
                    "start from a parameter snapshot instead of the "
                    "Gaussian init (single-method runs only)");
}

int run_example_cmd(int example, const RunFlags& f) {
    const bool both = f.method == "both";
    if (both && (!f.save_params_path.empty() || !f.load_params_path.empty())) {
        std::fprintf(stderr,
                     "error: --save-params/--load-params require "
                     "--method ansatz or deep-ritz\n");
        return 1;
    }

    std::vector<varitz::RunConfig> cfgs;
    auto push = [&](varitz::Method m) {
        varitz::RunConfig c = varitz::default_run_config(example, m);
        c.seed = f.seed;
        if (f.neurons) c.neurons = *f.neurons;
        if (f.iters) c.max_iters = *f.iters;
        if (f.lr) c.learning_rate = *f.lr;
        if (f.beta) c.beta = *f.beta;
        if (f.gamma) c.gamma = *f.gamma;
        if (f.quad) c.quad_points = *f.quad;
        if (f.record_every) c.record_every = *f.record_every;
        if (f.init_mean) c.init_mean = *f.init_mean;
        if (f.init_std) c.init_std = *f.init_std;
        if (f.linear_potential) c.squared_potential = false;
        if (!f.load_params_path.empty())
            c.initial_theta = varitz::load_params(f.load_params_path).theta;
        cfgs.push_back(std::move(c));
    };
    if (f.method != "deep-ritz") push(varitz::Method::ansatz);
    if (f.method != "ansatz") push(varitz::Method::deep_ritz);
    if (both && example == 1) {
        // width-matched baseline: same two neurons as the conforming run
        push(varitz::Method::deep_ritz);
        cfgs.back().neurons = 2;
        cfgs.back().label = "deep-ritz-n2";
    }

    bool diverged = false;
    for (const auto& c : cfgs) {
        varitz::RunReport rep = varitz::run_single(c);
        const std::string dir = varitz::write_run_report(f.out, rep);
        if (!f.save_params_path.empty()) {
            varitz::ParamsHeader ph;
            ph.outputs = 1;
            ph.inputs = static_cast<std::uint32_t>(example);
            ph.width = static_cast<std::uint32_t>(c.neurons);
            ph.layers = static_cast<std::uint32_t>(c.hidden_layers);
            varitz::save_params(f.save_params_path, ph, rep.trace.final_theta);
        }
        std::printf("example%d %-9s seed=%" PRIu64 " -> %s\n", example,
                    c.label.c_str(), c.seed, dir.c_str());
        std::printf("  action=%.10g  err_max=%.4g  err_rms=%.4g  bres=%.4g",
                    rep.final_action, rep.error.max_abs, rep.error.rms,
                    rep.boundary_residual);
        if (rep.lambda) std::printf("  lambda=%.6f", *rep.lambda);
        if (rep.convergence_iter_4sig)
            std::printf("  conv4=%zu", *rep.convergence_iter_4sig);
        if (rep.trace.diverged) std::printf("  DIVERGED");
        std::printf("\n");
        diverged = diverged || rep.trace.diverged;
    }
    return diverged ? 2 : 0;
}

// Central-difference check of the analytic action gradient at random
// parameter vectors; returns the max relative error (scaled by the
// gradient max-norm).
double gradcheck_max_rel(int example, varitz::Method method,
                         std::size_t trials, std::uint64_t seed) {
    varitz::RunConfig cfg = varitz::default_run_config(example, method);
    cfg.quad_points = 4; // coarse grid: checks the algebra, not the integral
    varitz::Problem pb = varitz::make_problem(cfg);
    auto trial = varitz::make_trial(cfg);
    const std::size_t P = trial->param_count();
    varitz::SplitMix64 rng(seed ^ (0x9e3779b9u + static_cast<std::uint64_t>(example)));

    const double h = 1e-6;
    double worst = 0.0;
    std::vector<double> theta(P), grad;
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& v : theta) v = 0.3 * rng.next_normal();
        grad = varitz::action_gradient(pb, *trial, theta);
        double gmax = 1e-12;
        for (double g : grad) gmax = std::max(gmax, std::fabs(g));
        std::vector<double> probe = theta;
        for (std::size_t s = 0; s < P; ++s) {
            probe[s] = theta[s] + h;
            const double fp = varitz::action(pb, *trial, probe);
            probe[s] = theta[s] - h;
            const double fm = varitz::action(pb, *trial, probe);
            probe[s] = theta[s];
            const double fd = (fp - fm) / (2.0 * h);
            worst = std::max(worst, std::fabs(grad[s] - fd) / gmax);
        }
    }
    return worst;
}

int gradcheck_cmd(int example, std::size_t trials, std::uint64_t seed) {
    int bad = 0;
    const std::vector<int> examples =
        example == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{example};
    for (int ex : examples) {
        for (varitz::Method m : {varitz::Method::ansatz, varitz::Method::deep_ritz}) {
            const double rel = gradcheck_max_rel(ex, m, trials, seed);
            const bool ok = rel <= 1e-5;
            std::printf("gradcheck example%d %-9s max_rel=%.3e  %s\n", ex,
                        varitz::method_name(m), rel, ok ? "ok" : "FAIL");
            if (!ok) ++bad;
        }
    }
    return bad == 0 ? 0 : 2;
}

int quadcheck_cmd() {
    int bad = 0;
    for (std::size_t k : {2, 4, 8, 16, 32}) {
        const varitz::QuadratureRule1D rule = varitz::gauss_legendre_rule(k);
        const std::size_t degree = 2 * k - 1;
        // sum_d u^d / (d+1): integral over [0,1] is sum_d 1/(d+1)^2
        double exact = 0.0, approx = 0.0;
        for (std::size_t d = 0; d <= degree; ++d)
            exact += 1.0 / ((d + 1.0) * (d + 1.0));
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double term = 0.0, power = 1.0;
            for (std::size_t d = 0; d <= degree; ++d) {
                term += power / (d + 1.0);
                power *= rule.nodes[q];
            }
            approx += rule.weights[q] * term;
        }
        const double err = std::fabs(approx - exact);
        const bool ok = err <= 1e-12;
        std::printf("quadcheck k=%-2zu degree=%-2zu err=%.3e  %s\n", k, degree,
                    err, ok ? "ok" : "FAIL");
        if (!ok) ++bad;
    }
    return bad == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational trainer: boundary-conforming neural ansatz vs. "
                 "penalty baseline"};
    app.require_subcommand(1);

    RunFlags f1, f2, f3;
    CLI::App* ex1 = app.add_subcommand("example1", "1-D quadratic Lagrangian");
    add_run_flags(ex1, f1);
    CLI::App* ex2 = app.add_subcommand("example2", "2-D Poisson problem");
    add_run_flags(ex2, f2);
    CLI::App* ex3 =
        app.add_subcommand("example3", "3-D oscillator eigenvalue problem");
    add_run_flags(ex3, f3);
    ex3->add_flag("--linear-potential", f3.linear_potential,
                  "potential term linear in y (literal variant; default off)");

    int gc_example = 0;
    std::uint64_t gc_seed = 0;
    std::size_t gc_trials = 25;
    CLI::App* gc = app.add_subcommand(
        "gradcheck", "finite-difference check of analytic gradients");
    gc->add_option("--example", gc_example, "1|2|3 (default: all)")
        ->check(CLI::IsMember({0, 1, 2, 3}));
    gc->add_option("--trials", gc_trials, "random parameter vectors per check")
        ->capture_default_str();
    gc->add_option("--seed", gc_seed, "RNG seed")->capture_default_str();

    CLI::App* qc = app.add_subcommand(
        "quadcheck", "Gauss-Legendre exactness up to degree 2k-1");
    (void)qc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ex1->parsed()) return run_example_cmd(1, f1);
        if (ex2->parsed()) return run_example_cmd(2, f2);
        if (ex3->parsed()) return run_example_cmd(3, f3);
        if (gc->parsed()) return gradcheck_cmd(gc_example, gc_trials, gc_seed);
        if (qc->parsed()) return quadcheck_cmd();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
