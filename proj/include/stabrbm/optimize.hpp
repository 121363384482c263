#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "stabrbm/dense.hpp"
#include "stabrbm/lattice.hpp"
#include "stabrbm/rbm.hpp"

namespace stabrbm {

struct OptimizerConfig {
    int max_iterations = 5000;
    int restarts = 8;
    std::uint64_t rng_seed = 1234;
    double init_scale = 0.2;       // std-dev of random init, real and imag parts
    double convergence_tol = 1e-4; // target distance
    double gradient_tol = 1e-9;
    bool gradient_check = false;
    int hidden_count = 0;          // 0: one hidden unit per visible spin
};

struct FitReport {
    double final_distance = 0.0;
    double final_fidelity = 0.0;
    double gradient_norm = 0.0;
    int iterations_used = 0;
    int restart_index = -1;
    int restarts_run = 0;
    bool converged = false;
    double gradient_check_max_rel_err = -1.0;        // -1: check not run
    std::vector<double> parameter_norms;             // ||a||, ||b||, ||W||
    std::vector<std::pair<int, double>> trace;       // (iteration, best distance so far)
};

struct OptimizationStalled : std::runtime_error {
    FitReport report;
    explicit OptimizationStalled(FitReport r)
        : std::runtime_error("optimization stalled"), report(std::move(r)) {}
};

// Loss 1 - F and its gradient with respect to the 2(n+m+mn) real parameter
// components, exact over all 2^n configurations. Layout: interleaved
// (re, im) for a[0..n), then b[0..m), then W row-major.
double loss_and_gradient(const std::vector<double>& params, const DenseState& target,
                         int m, std::vector<double>& grad);

std::pair<RbmState, FitReport> fit_subsystem(const DenseState& target,
                                             const OptimizerConfig& cfg);

// Fit the wall/twist subsystem, construct the residual pure generators
// analytically, and compose into a global RBM.
RbmState fit_twist_lattice(const LatticeCode& code, const OptimizerConfig& cfg = {},
                           FitReport* report = nullptr);

}  // namespace stabrbm
