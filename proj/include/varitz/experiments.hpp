#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "varitz/ansatz.hpp"
#include "varitz/functional.hpp"
#include "varitz/optimizer.hpp"

namespace varitz {

enum class Method { ansatz, deep_ritz };
const char* method_name(Method m); // "ansatz" / "deep-ritz"

// Everything needed to reproduce one training run.  default_run_config()
// fills in the per-example defaults; callers override individual fields.
struct RunConfig {
    int example = 1; // 1, 2, or 3
    Method method = Method::ansatz;
    std::string label;            // output tag; defaults to method_name
    std::size_t neurons = 2;      // hidden width N
    std::size_t hidden_layers = 1;
    std::size_t max_iters = 50000;
    double learning_rate = 0.001;
    double beta = 0.0;            // boundary penalty weight
    double gamma = 0.0;           // normalization penalty weight
    std::size_t quad_points = 32; // Gauss-Legendre nodes per axis
    std::uint64_t seed = 0;
    std::size_t record_every = 1;
    double init_mean = 0.0;
    double init_std = 0.1;
    bool squared_potential = true;     // oscillator potential acts on y^2
    std::vector<double> initial_theta; // overrides the Gaussian init if set
};

RunConfig default_run_config(int example, Method method);

struct ErrorMetrics {
    double max_abs = 0.0;
    double rms = 0.0;
};

// Max abs and RMS of samples - exact over a grid (sizes must match).
ErrorMetrics error_report(const std::vector<double>& samples,
                          const std::vector<double>& exact);

struct RunReport {
    RunConfig config;
    TrainTrace trace;
    std::string grid_shape;                // e.g. "101", "51x51", "21x21x21"
    std::vector<std::vector<double>> grid; // evaluation points (problem coords)
    std::vector<double> solution;          // trained trial on the grid
    std::vector<double> exact;             // reference solution on the grid
    ErrorMetrics error;
    double final_action = 0.0;
    double boundary_residual = 0.0;
    std::optional<double> lambda;          // Rayleigh quotient (example 3)
    std::optional<std::size_t> convergence_iter_4sig;
};

// Problem/trial assembly, exposed for tests and the gradient checker.
Problem make_problem(const RunConfig& cfg);
std::unique_ptr<TrialFunction> make_trial(const RunConfig& cfg);

// Train one configuration and evaluate it on the example's reference grid.
RunReport run_single(const RunConfig& cfg);

// Standard run sets (proposed method first):
// example 1: ansatz N=2; deep-ritz N=30; deep-ritz N=2 (label deep-ritz-n2)
// example 2: ansatz single-layer N=5; deep-ritz two-layer N=10
// example 3: ansatz N=50; deep-ritz N=50
std::vector<RunReport> run_example(int example, std::uint64_t seed);

// Writes trace.csv, report.json, solution.csv and params.bin into
// {out_root}/example{K}_{label}_{seed}/ and returns that directory.
std::string write_run_report(const std::string& out_root,
                             const RunReport& report);

// Reference solutions.
double example1_exact(double u);              // on the unit interval
double example2_exact(double x1, double x2);
double example2_source(double x1, double x2); // f with -laplacian(y) = f
double example3_ground_state(const double* x); // unit L2 norm on R^3

} // namespace varitz
