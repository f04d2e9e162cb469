#include "lgt/drivers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lgt/ansatz.hpp"
#include "lgt/moo.hpp"
#include "lgt/sim_core.hpp"

namespace lgt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stall-escape schedule for the two-objective VQT loop. MGDA alone freezes at
// the unconstrained free-energy minimum (a balanced Pareto-spurious point), so
// on stall the driver re-seats theta near the identity frame (whose basis-state
// violations are maximally discriminating), then alternates a closed-form
// product-state fit of phi with penalized Adam steps on theta, cooling the fit
// temperature toward the target and raising the penalty stage by stage.
constexpr double kStallKkt = 3e-3;
constexpr int kEscapeStages = 4;
constexpr int kEscapeStageLen = 1500;
constexpr double kEscapeMu[kEscapeStages] = {1.0, 2.0, 4.0, 8.0};
constexpr double kPhiRelaxRate = 0.1;
constexpr double kResetScale = 0.02;
constexpr double kZeroGrad2 = 1e-24;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Direction {
    double alpha = 0.0;
    double kkt = 0.0;
    WeightVector weights;
};

// alpha from the closed form, with the driver rule: a vanishing constraint
// gradient means L2 sits at its global optimum, so take the pure-L1 step and
// judge stationarity by the direction actually used.
Direction mgda_direction(const std::vector<double>& g1, const std::vector<double>& g2) {
    Direction dir;
    dir.alpha = solve_alpha_two_task(g1, g2);
    if (dot(g2, g2) < kZeroGrad2) dir.alpha = 1.0;
    dir.weights.alphas = {dir.alpha, 1.0 - dir.alpha};
    dir.kkt = kkt_residual({g1, g2}, dir.weights);
    return dir;
}

struct Adam {
    std::vector<double> m, v;
    int t = 0;
    double lr = 0.02;

    void reset(size_t n) {
        m.assign(n, 0.0);
        v.assign(n, 0.0);
        t = 0;
    }
    void apply(std::vector<double>& x, const std::vector<double>& g) {
        ++t;
        const double c1 = 1.0 - std::pow(0.9, t);
        const double c2 = 1.0 - std::pow(0.999, t);
        for (size_t i = 0; i < x.size(); ++i) {
            m[i] = 0.9 * m[i] + 0.1 * g[i];
            v[i] = 0.999 * v[i] + 0.001 * g[i] * g[i];
            x[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + 1e-8);
        }
    }
};

struct FrameProfiles {
    std::vector<double> energy;
    std::vector<double> violation;
};

FrameProfiles frame_profiles(const ObjectiveContext& ctx, const std::vector<double>& theta) {
    const Circuit circuit = bind_parameters(ctx.tmpl, theta);
    const int n = ctx.tmpl.n_qubits;
    const uint64_t dim = uint64_t(1) << n;
    FrameProfiles fp;
    fp.energy.resize(dim);
    fp.violation.resize(dim);
    for (uint64_t x = 0; x < dim; ++x) {
        StateVector psi = new_statevector(n);
        psi.amplitudes[0] = 0.0;
        psi.amplitudes[x] = 1.0;
        apply_circuit(psi, circuit);
        fp.energy[x] = std::real(expectation_value(psi, ctx.hamiltonian));
        double w = 0.0;
        for (const auto& g : ctx.gauss) w += 1.0 - std::real(expectation_value(psi, g));
        fp.violation[x] = w;
    }
    return fp;
}

// Product fit of the Gibbs weights over the d_phys least-violating frame
// states: match single-qubit marginals (the KL-closest product distribution).
std::vector<double> meanfield_phi(const FrameProfiles& fp, int d_phys, double t_eff,
                                  int n_qubits) {
    const size_t dim = fp.energy.size();
    std::vector<uint64_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
        if (fp.violation[a] != fp.violation[b]) return fp.violation[a] < fp.violation[b];
        return a < b;
    });
    order.resize(std::max(1, d_phys));

    double e_min = fp.energy[order[0]];
    for (uint64_t x : order) e_min = std::min(e_min, fp.energy[x]);
    std::vector<double> weight(order.size());
    double z = 0.0;
    for (size_t k = 0; k < order.size(); ++k) {
        weight[k] = std::exp(-(fp.energy[order[k]] - e_min) / t_eff);
        z += weight[k];
    }

    std::vector<double> phi(n_qubits);
    for (int i = 0; i < n_qubits; ++i) {
        double m0 = 0.0;
        for (size_t k = 0; k < order.size(); ++k)
            if (((order[k] >> i) & 1) == 0) m0 += weight[k];
        m0 = std::clamp(m0 / z, 1e-9, 1.0 - 1e-9);
        phi[i] = std::asin(std::sqrt(m0));
    }
    return phi;
}

struct SingleResult {
    std::vector<IterRecord> records;
    bool converged = false;
    double L1 = 0.0;
    double L2 = 0.0;
    std::vector<double> theta;
    std::vector<double> phi;
};

// Feasibility-first selection: a restart meeting the constraint tolerance beats
// any that does not; ties break toward lower L1 (feasible) or lower L2.
bool better_run(const SingleResult& a, const SingleResult& b, double l2_tol) {
    const bool fa = a.L2 < l2_tol;
    const bool fb = b.L2 < l2_tol;
    if (fa != fb) return fa;
    return fa ? a.L1 < b.L1 : a.L2 < b.L2;
}

// Lowest final scalarized cost wins; the converged flag only breaks exact ties
// (a stalled-but-stopped run must not outrank a better unconverged one).
bool better_cost(const SingleResult& a, const SingleResult& b, double mu) {
    const double ca = a.L1 + mu * a.L2;
    const double cb = b.L1 + mu * b.L2;
    if (ca != cb) return ca < cb;
    return a.converged && !b.converged;
}

struct InitDraws {
    std::vector<std::vector<double>> theta;
    std::vector<std::vector<double>> phi;
};

InitDraws draw_inits(std::mt19937_64& rng, const RunConfig& cfg, int n_params, int n_qubits,
                     bool with_phi) {
    std::uniform_real_distribution<double> u_theta(-0.1, 0.1);
    std::uniform_real_distribution<double> u_phi(kPi / 4 - 0.3, kPi / 4 + 0.3);
    InitDraws draws;
    draws.theta.resize(cfg.restarts);
    draws.phi.resize(cfg.restarts);
    for (int r = 0; r < cfg.restarts; ++r) {
        draws.theta[r].resize(n_params);
        for (auto& v : draws.theta[r]) v = u_theta(rng);
        if (with_phi) {
            draws.phi[r].resize(n_qubits);
            for (auto& v : draws.phi[r]) v = u_phi(rng);
        }
    }
    if (cfg.init_theta) {
        if (int(cfg.init_theta->size()) != n_params)
            throw std::invalid_argument("init_theta: expected " + std::to_string(n_params) +
                                        " values");
        draws.theta[0] = *cfg.init_theta;
    }
    if (with_phi && cfg.init_phi) {
        if (int(cfg.init_phi->size()) != n_qubits)
            throw std::invalid_argument("init_phi: expected " + std::to_string(n_qubits) +
                                        " values");
        draws.phi[0] = *cfg.init_phi;
    }
    return draws;
}

SingleResult vqe_single(const ObjectiveContext& ctx, const RunConfig& cfg,
                        std::vector<double> theta) {
    SingleResult res;
    for (int it = 0; it < cfg.max_iters; ++it) {
        PairEvaluation pair = vqe_pair(ctx, theta);
        Direction dir = mgda_direction(pair.grad_L1, pair.grad_L2);
        res.records.push_back({it, pair.L1, pair.L2, dir.alpha, dir.kkt});
        if (dir.kkt < cfg.kkt_tol && pair.L2 < cfg.l2_tol) {
            res.converged = true;
            res.L1 = pair.L1;
            res.L2 = pair.L2;
            res.theta = std::move(theta);
            return res;
        }
        theta = descent_step(theta, {pair.grad_L1, pair.grad_L2}, dir.weights, cfg.eta);
    }
    res.L1 = vqe_energy(ctx, theta);
    res.L2 = gauss_violation(ctx, theta);
    res.theta = std::move(theta);
    return res;
}

SingleResult vqt_single(const ObjectiveContext& ctx, const RunConfig& cfg,
                        std::vector<double> theta, std::vector<double> phi, double T,
                        int d_phys, std::mt19937_64& rng) {
    SingleResult res;
    const int n_theta = int(theta.size());
    const int n_phi = int(phi.size());

    int phase = 0;  // 0 = MGDA, 1 = escape
    int stage = 0;
    int stage_it = 0;
    Adam adam;
    std::uniform_real_distribution<double> reset(-kResetScale, kResetScale);

    for (int it = 0; it < cfg.max_iters; ++it) {
        PairEvaluation pair = vqt_pair(ctx, theta, phi, T);
        Direction dir = mgda_direction(pair.grad_L1, pair.grad_L2);
        res.records.push_back({it, pair.L1, pair.L2, dir.alpha, dir.kkt});

        if (phase == 0) {
            if (dir.kkt < cfg.kkt_tol && pair.L2 < cfg.l2_tol) {
                res.converged = true;
                res.L1 = pair.L1;
                res.L2 = pair.L2;
                res.theta = std::move(theta);
                res.phi = std::move(phi);
                return res;
            }
            if (dir.kkt < kStallKkt && pair.L2 >= cfg.l2_tol) {
                phase = 1;
                stage = 0;
                stage_it = 0;
                adam.reset(theta.size());
                for (auto& v : theta) v = reset(rng);
                for (auto& p : phi) {
                    const double s = std::sin(p);
                    p = std::asin(std::sqrt(std::min(1.0, s * s)));
                }
                continue;  // the re-seat is this iteration's update
            }
            std::vector<double> params(n_theta + n_phi);
            std::copy(theta.begin(), theta.end(), params.begin());
            std::copy(phi.begin(), phi.end(), params.begin() + n_theta);
            params = descent_step(params, {pair.grad_L1, pair.grad_L2}, dir.weights, cfg.eta);
            std::copy(params.begin(), params.begin() + n_theta, theta.begin());
            std::copy(params.begin() + n_theta, params.end(), phi.begin());
        } else {
            const double mu = kEscapeMu[stage];
            const double t_eff =
                T + (std::max(T, 1.0) - T) * double(kEscapeStages - 1 - stage) /
                        double(kEscapeStages - 1);
            const FrameProfiles prof = frame_profiles(ctx, theta);
            const std::vector<double> phi_mf =
                meanfield_phi(prof, d_phys, t_eff, ctx.tmpl.n_qubits);
            for (int i = 0; i < n_phi; ++i) phi[i] += kPhiRelaxRate * (phi_mf[i] - phi[i]);

            std::vector<double> g_theta(n_theta);
            for (int i = 0; i < n_theta; ++i)
                g_theta[i] = pair.grad_L1[i] + mu * pair.grad_L2[i];
            adam.apply(theta, g_theta);

            if (++stage_it >= kEscapeStageLen) {
                stage_it = 0;
                if (++stage >= kEscapeStages) phase = 0;
            }
        }
    }
    res.L1 = vqt_free_energy(ctx, theta, phi, T);
    res.L2 = vqt_gauss_violation(ctx, theta, phi);
    res.theta = std::move(theta);
    res.phi = std::move(phi);
    return res;
}

SingleResult penalty_single(const ObjectiveContext& ctx, const RunConfig& cfg,
                            std::vector<double> theta, std::vector<double> phi, double mu,
                            bool thermal, double T) {
    SingleResult res;
    const int n_theta = int(theta.size());
    const int n_phi = int(phi.size());
    for (int it = 0; it < cfg.max_iters; ++it) {
        PairEvaluation pair =
            thermal ? vqt_pair(ctx, theta, phi, T) : vqe_pair(ctx, theta);
        std::vector<double> grad(pair.grad_L1.size());
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] = pair.grad_L1[i] + mu * pair.grad_L2[i];
        const double gnorm = std::sqrt(dot(grad, grad));
        res.records.push_back({it, pair.L1, pair.L2, 1.0, gnorm});
        if (gnorm < cfg.kkt_tol) {
            res.converged = true;
            res.L1 = pair.L1;
            res.L2 = pair.L2;
            res.theta = std::move(theta);
            res.phi = std::move(phi);
            return res;
        }
        for (int i = 0; i < n_theta; ++i) theta[i] -= cfg.eta * grad[i];
        for (int i = 0; i < n_phi; ++i) phi[i] -= cfg.eta * grad[n_theta + i];
    }
    if (thermal) {
        res.L1 = vqt_free_energy(ctx, theta, phi, T);
        res.L2 = vqt_gauss_violation(ctx, theta, phi);
    } else {
        res.L1 = vqe_energy(ctx, theta);
        res.L2 = gauss_violation(ctx, theta);
    }
    res.theta = std::move(theta);
    res.phi = std::move(phi);
    return res;
}

RunTrace assemble(const RunConfig& cfg, std::vector<SingleResult>& runs, int best,
                  double oracle, double mu, double temperature, double wall_seconds) {
    RunTrace trace;
    SingleResult& sel = runs[best];
    trace.records = std::move(sel.records);
    trace.summary.converged = sel.converged;
    trace.summary.iterations = int(trace.records.size());
    trace.summary.restart_index = best;
    trace.summary.L1 = sel.L1;
    trace.summary.L2 = sel.L2;
    trace.summary.oracle = oracle;
    trace.summary.abs_error = std::abs(sel.L1 - oracle);
    trace.summary.seed = cfg.seed;
    trace.summary.wall_seconds = wall_seconds;
    trace.summary.mu = mu;
    trace.summary.temperature = temperature;
    trace.summary.theta = std::move(sel.theta);
    trace.summary.phi = std::move(sel.phi);
    return trace;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void RunConfig::validate() const {
    model.validate();
    if (n_blocks < 1) throw std::invalid_argument("n_blocks: must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("eta: must be > 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters: must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts: must be >= 1");
    if (!(kkt_tol > 0.0)) throw std::invalid_argument("kkt_tol: must be > 0");
    if (!(l2_tol > 0.0)) throw std::invalid_argument("l2_tol: must be > 0");
    if ((mode == RunMode::vqt_moo || mode == RunMode::vqt_penalty) && !(temperature > 0.0))
        throw std::invalid_argument("temperature: must be > 0");
    for (double mu : mu_grid)
        if (mu < 0.0) throw std::invalid_argument("mu_grid: entries must be >= 0");
    for (double T : temperature_grid)
        if (!(T > 0.0)) throw std::invalid_argument("temperature_grid: entries must be > 0");
}

RunTrace run_vqe(const RunConfig& config) {
    config.validate();
    if (config.mode != RunMode::vqe_moo)
        throw std::invalid_argument("run_vqe requires mode vqe_moo");
    const auto t0 = std::chrono::steady_clock::now();

    const AnsatzTemplate tmpl =
        build_ansatz(config.model.n_qubits(), config.n_blocks, config.ring);
    const ObjectiveContext ctx(config.model, tmpl);
    std::mt19937_64 rng(config.seed);
    InitDraws draws = draw_inits(rng, config, tmpl.parameter_count(), tmpl.n_qubits, false);

    std::vector<SingleResult> runs;
    runs.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r)
        runs.push_back(vqe_single(ctx, config, draws.theta[r]));

    int best = 0;
    for (int r = 1; r < config.restarts; ++r)
        if (better_run(runs[r], runs[best], config.l2_tol)) best = r;

    const double oracle = ed_ground(config.model).energy;
    return assemble(config, runs, best, oracle, 0.0, 0.0, elapsed_since(t0));
}

std::vector<RunTrace> run_vqe_penalty(const RunConfig& config) {
    config.validate();
    if (config.mode != RunMode::vqe_penalty)
        throw std::invalid_argument("run_vqe_penalty requires mode vqe_penalty");
    if (config.mu_grid.empty())
        throw std::invalid_argument("mu_grid: must be non-empty for penalty runs");

    const AnsatzTemplate tmpl =
        build_ansatz(config.model.n_qubits(), config.n_blocks, config.ring);
    const ObjectiveContext ctx(config.model, tmpl);
    const double oracle = ed_ground(config.model).energy;

    std::vector<RunTrace> traces;
    traces.reserve(config.mu_grid.size());
    for (double mu : config.mu_grid) {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(config.seed);
        InitDraws draws =
            draw_inits(rng, config, tmpl.parameter_count(), tmpl.n_qubits, false);
        std::vector<SingleResult> runs;
        runs.reserve(config.restarts);
        for (int r = 0; r < config.restarts; ++r)
            runs.push_back(penalty_single(ctx, config, draws.theta[r], {}, mu, false, 0.0));
        int best = 0;
        for (int r = 1; r < config.restarts; ++r)
            if (better_cost(runs[r], runs[best], mu)) best = r;
        traces.push_back(assemble(config, runs, best, oracle, mu, 0.0, elapsed_since(t0)));
    }
    return traces;
}

RunTrace run_vqt(const RunConfig& config) {
    config.validate();
    if (config.mode != RunMode::vqt_moo)
        throw std::invalid_argument("run_vqt requires mode vqt_moo");
    const auto t0 = std::chrono::steady_clock::now();

    const AnsatzTemplate tmpl =
        build_ansatz(config.model.n_qubits(), config.n_blocks, config.ring);
    const ObjectiveContext ctx(config.model, tmpl);
    const int d_phys = enumerate_physical_basis(config.model).dimension();
    std::mt19937_64 rng(config.seed);
    InitDraws draws = draw_inits(rng, config, tmpl.parameter_count(), tmpl.n_qubits, true);

    std::vector<SingleResult> runs;
    runs.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r)
        runs.push_back(vqt_single(ctx, config, draws.theta[r], draws.phi[r],
                                  config.temperature, d_phys, rng));

    int best = 0;
    for (int r = 1; r < config.restarts; ++r)
        if (better_run(runs[r], runs[best], config.l2_tol)) best = r;

    const double oracle = ed_thermal(config.model, config.temperature).free_energy;
    return assemble(config, runs, best, oracle, 0.0, config.temperature, elapsed_since(t0));
}

std::vector<RunTrace> run_vqt_penalty(const RunConfig& config) {
    config.validate();
    if (config.mode != RunMode::vqt_penalty)
        throw std::invalid_argument("run_vqt_penalty requires mode vqt_penalty");
    if (config.mu_grid.empty())
        throw std::invalid_argument("mu_grid: must be non-empty for penalty runs");

    const AnsatzTemplate tmpl =
        build_ansatz(config.model.n_qubits(), config.n_blocks, config.ring);
    const ObjectiveContext ctx(config.model, tmpl);
    const double oracle = ed_thermal(config.model, config.temperature).free_energy;

    std::vector<RunTrace> traces;
    traces.reserve(config.mu_grid.size());
    for (double mu : config.mu_grid) {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(config.seed);
        InitDraws draws =
            draw_inits(rng, config, tmpl.parameter_count(), tmpl.n_qubits, true);
        std::vector<SingleResult> runs;
        runs.reserve(config.restarts);
        for (int r = 0; r < config.restarts; ++r)
            runs.push_back(penalty_single(ctx, config, draws.theta[r], draws.phi[r], mu,
                                          true, config.temperature));
        int best = 0;
        for (int r = 1; r < config.restarts; ++r)
            if (better_cost(runs[r], runs[best], mu)) best = r;
        traces.push_back(
            assemble(config, runs, best, oracle, mu, config.temperature, elapsed_since(t0)));
    }
    return traces;
}

std::vector<RunTrace> run_temperature_sweep(const RunConfig& config) {
    if (config.temperature_grid.empty())
        throw std::invalid_argument("temperature_grid: must be non-empty for sweeps");
    std::vector<RunTrace> traces;
    traces.reserve(config.temperature_grid.size());
    for (double T : config.temperature_grid) {
        RunConfig point = config;
        point.mode = RunMode::vqt_moo;
        point.temperature = T;
        traces.push_back(run_vqt(point));
    }
    return traces;
}

}  // namespace lgt
