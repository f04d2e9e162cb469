#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lgt/lgt_model.hpp"
#include "lgt/objectives.hpp"

namespace lgt {

enum class RunMode { vqe_moo, vqe_penalty, vqt_moo, vqt_penalty };

struct RunConfig {
    ModelSpec model;
    RunMode mode = RunMode::vqe_moo;
    int n_blocks = 3;
    bool ring = true;
    double eta = 0.02;
    int max_iters = 20000;
    double kkt_tol = 1e-4;
    double l2_tol = 1e-2;
    uint64_t seed = 0;
    int restarts = 5;
    double temperature = 1.0;          // vqt modes
    std::vector<double> mu_grid;       // penalty modes; defaulted by the cli layer
    std::vector<double> temperature_grid;  // temperature sweep
    std::optional<std::vector<double>> init_theta;  // restart 0 override
    std::optional<std::vector<double>> init_phi;

    void validate() const;
};

struct IterRecord {
    int iteration = 0;
    double L1 = 0.0;
    double L2 = 0.0;
    double alpha = 0.0;
    double kkt_residual = 0.0;
};

struct RunSummary {
    bool converged = false;
    int iterations = 0;      // rows recorded for the selected restart
    int restart_index = 0;
    double L1 = 0.0;
    double L2 = 0.0;
    double oracle = 0.0;     // E0 (vqe) or F(T) (vqt) from exact diagonalization
    double abs_error = 0.0;  // |L1 - oracle|
    uint64_t seed = 0;
    double wall_seconds = 0.0;
    double mu = 0.0;          // penalty runs
    double temperature = 0.0; // vqt runs
    std::vector<double> theta;  // selected restart's final parameters
    std::vector<double> phi;
};

struct RunTrace {
    std::vector<IterRecord> records;
    RunSummary summary;
};

// Two-objective VQE: MGDA on (energy, Gauss violation), best of `restarts`.
RunTrace run_vqe(const RunConfig& config);

// Scalarized VQE, one gradient descent per mu in mu_grid.
std::vector<RunTrace> run_vqe_penalty(const RunConfig& config);

// Two-objective VQT at config.temperature (free energy, Gauss violation).
RunTrace run_vqt(const RunConfig& config);

// Scalarized VQT, one descent per mu in mu_grid at config.temperature.
std::vector<RunTrace> run_vqt_penalty(const RunConfig& config);

// run_vqt once per temperature in temperature_grid.
std::vector<RunTrace> run_temperature_sweep(const RunConfig& config);

}  // namespace lgt
