#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "lgt/cli.hpp"

namespace lgt {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Full 16-digit scientific form: explicit precision for the plot tables and
// byte-stable trace lines.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::vqe_moo: return "vqe_moo";
        case RunMode::vqe_penalty: return "vqe_penalty";
        case RunMode::vqt_moo: return "vqt_moo";
        case RunMode::vqt_penalty: return "vqt_penalty";
    }
    return "?";
}

void check_mode(const std::string& sub, RunMode mode) {
    bool ok = false;
    if (sub == "vqe") ok = mode == RunMode::vqe_moo;
    else if (sub == "vqt") ok = mode == RunMode::vqt_moo;
    else if (sub == "penalty-sweep")
        ok = mode == RunMode::vqe_penalty || mode == RunMode::vqt_penalty;
    else if (sub == "temp-sweep") ok = mode == RunMode::vqt_moo;
    else if (sub == "ed") ok = true;
    if (!ok)
        throw std::invalid_argument("subcommand '" + sub + "' does not accept mode '" +
                                    mode_name(mode) + "'");
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_trace(const fs::path& path, const RunTrace& trace) {
    std::ofstream out = open_out(path);
    for (const auto& r : trace.records) {
        out << "{\"iteration\":" << r.iteration << ",\"L1\":" << fmt(r.L1)
            << ",\"L2\":" << fmt(r.L2) << ",\"alpha\":" << fmt(r.alpha)
            << ",\"kkt_residual\":" << fmt(r.kkt_residual) << "}\n";
    }
}

void write_convergence_csv(const fs::path& path, const RunTrace& trace) {
    std::ofstream out = open_out(path);
    out << "iteration,L1,L2\n";
    for (const auto& r : trace.records)
        out << r.iteration << "," << fmt(r.L1) << "," << fmt(r.L2) << "\n";
}

ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["mode"] = mode_name(cfg.mode);
    j["n_sites"] = cfg.model.n_sites;
    j["t"] = cfg.model.t;
    j["h"] = cfg.model.h;
    j["boundary"] =
        cfg.model.boundary == Boundary::periodic ? "periodic" : "open_dangling";
    j["p"] = cfg.n_blocks;
    j["ring"] = cfg.ring;
    j["eta"] = cfg.eta;
    j["max_iters"] = cfg.max_iters;
    j["kkt_tol"] = cfg.kkt_tol;
    j["l2_tol"] = cfg.l2_tol;
    j["seed"] = cfg.seed;
    j["restarts"] = cfg.restarts;
    j["temperature"] = cfg.temperature;
    j["mu_grid"] = cfg.mu_grid;
    j["T_grid"] = cfg.temperature_grid;
    if (cfg.init_theta) j["init_theta"] = *cfg.init_theta;
    if (cfg.init_phi) j["init_phi"] = *cfg.init_phi;
    return j;
}

ordered_json summary_entry(const RunSummary& s, bool penalty, bool thermal) {
    ordered_json j;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["restart_index"] = s.restart_index;
    j["L1"] = s.L1;
    j["L2"] = s.L2;
    j["oracle"] = s.oracle;
    j["abs_error"] = s.abs_error;
    j["seed"] = s.seed;
    j["wall_seconds"] = s.wall_seconds;
    if (penalty) j["mu"] = s.mu;
    if (thermal) j["temperature"] = s.temperature;
    j["theta"] = s.theta;
    if (!s.phi.empty()) j["phi"] = s.phi;
    return j;
}

void write_summary(const fs::path& path, const RunConfig& cfg,
                   const std::vector<const RunSummary*>& summaries, bool penalty,
                   bool thermal) {
    ordered_json j;
    j["config"] = config_echo(cfg);
    ordered_json runs = ordered_json::array();
    for (const RunSummary* s : summaries) runs.push_back(summary_entry(*s, penalty, thermal));
    j["runs"] = runs;
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

double unconstrained_ground(const ModelSpec& spec) {
    const Eigen::MatrixXcd H = dense_matrix(build_hamiltonian(spec), spec.n_qubits());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

int run_ed(const RunConfig& cfg, const fs::path& out_dir) {
    const ModelSpec& m = cfg.model;
    const GroundResult ground = ed_ground(m);
    const PhysicalBasis basis = enumerate_physical_basis(m);
    const ThermalResult thermal = ed_thermal(m, cfg.temperature);
    const double e_unc = unconstrained_ground(m);
    const uint64_t full_dim = uint64_t(1) << m.n_qubits();
    const uint64_t count_estimate = uint64_t(1) << (m.n_sites + 1);
    const bool estimate_matches = count_estimate == uint64_t(basis.dimension());

    std::cout << "exact diagonalization report\n"
              << "model: n_sites=" << m.n_sites << ", boundary="
              << (m.boundary == Boundary::periodic ? "periodic" : "open_dangling")
              << ", t=" << fmt_g(m.t) << ", h=" << fmt_g(m.h) << "\n"
              << "qubits: " << m.n_qubits() << " (full dimension " << full_dim << ")\n"
              << "physical dimension: " << basis.dimension() << "\n"
              << "independent constraints: " << basis.n_independent_constraints << " (of "
              << basis.enforced.size() << " enforced Gauss operators)\n"
              << "2^(n_sites+1) counting estimate: " << count_estimate
              << (estimate_matches ? " (matches the measured physical dimension)\n"
                                   : " (differs from the measured physical dimension)\n")
              << "constrained ground energy: " << fmt_g(ground.energy) << "\n"
              << "unconstrained ground energy: " << fmt_g(e_unc) << "\n"
              << "temperature: " << fmt_g(cfg.temperature) << "\n"
              << "free energy: " << fmt_g(thermal.free_energy) << "\n"
              << "thermal energy: " << fmt_g(thermal.energy) << "\n"
              << "thermal entropy: " << fmt_g(thermal.entropy) << "\n"
              << "log partition: " << fmt_g(thermal.log_partition) << "\n";

    ordered_json j;
    j["config"] = config_echo(cfg);
    j["qubits"] = m.n_qubits();
    j["full_dimension"] = full_dim;
    j["physical_dimension"] = basis.dimension();
    j["independent_constraints"] = basis.n_independent_constraints;
    j["enforced_gauss_operators"] = basis.enforced.size();
    j["counting_estimate_2^(n_sites+1)"] = count_estimate;
    j["counting_estimate_matches"] = estimate_matches;
    j["constrained_ground_energy"] = ground.energy;
    j["unconstrained_ground_energy"] = e_unc;
    j["temperature"] = cfg.temperature;
    j["free_energy"] = thermal.free_energy;
    j["thermal_energy"] = thermal.energy;
    j["thermal_entropy"] = thermal.entropy;
    j["log_partition"] = thermal.log_partition;
    std::ofstream out = open_out(out_dir / "ed.json");
    out << j.dump(2) << "\n";
    return 0;
}

int run_single(const RunConfig& cfg, const fs::path& out_dir, bool thermal) {
    const RunTrace trace = thermal ? run_vqt(cfg) : run_vqe(cfg);
    write_trace(out_dir / "trace.jsonl", trace);
    write_convergence_csv(out_dir / "convergence.csv", trace);
    write_summary(out_dir / "summary.json", cfg, {&trace.summary}, false, thermal);
    return trace.summary.converged ? 0 : 2;
}

int run_penalty(const RunConfig& cfg, const fs::path& out_dir) {
    const bool thermal = cfg.mode == RunMode::vqt_penalty;
    const std::vector<RunTrace> traces =
        thermal ? run_vqt_penalty(cfg) : run_vqe_penalty(cfg);

    std::vector<const RunSummary*> summaries;
    bool all_converged = true;
    for (const RunTrace& t : traces) {
        write_trace(out_dir / ("trace_mu" + fmt_g(t.summary.mu) + ".jsonl"), t);
        summaries.push_back(&t.summary);
        all_converged = all_converged && t.summary.converged;
    }
    write_summary(out_dir / "summary.json", cfg, summaries, true, thermal);

    std::ofstream curve = open_out(out_dir / "penalty_curve.csv");
    if (thermal) {
        curve << "mu,free_energy,L2,oracle_free_energy\n";
        for (const RunTrace& t : traces)
            curve << fmt(t.summary.mu) << "," << fmt(t.summary.L1) << ","
                  << fmt(t.summary.L2) << "," << fmt(t.summary.oracle) << "\n";
    } else {
        const double e_unc = unconstrained_ground(cfg.model);
        curve << "mu,energy,L2,oracle_constrained,oracle_unconstrained\n";
        for (const RunTrace& t : traces)
            curve << fmt(t.summary.mu) << "," << fmt(t.summary.L1) << ","
                  << fmt(t.summary.L2) << "," << fmt(t.summary.oracle) << ","
                  << fmt(e_unc) << "\n";
    }
    return all_converged ? 0 : 2;
}

int run_temp_sweep(const RunConfig& cfg, const fs::path& out_dir) {
    const std::vector<RunTrace> traces = run_temperature_sweep(cfg);

    std::vector<const RunSummary*> summaries;
    bool all_converged = true;
    for (const RunTrace& t : traces) {
        write_trace(out_dir / ("trace_T" + fmt_g(t.summary.temperature) + ".jsonl"), t);
        summaries.push_back(&t.summary);
        all_converged = all_converged && t.summary.converged;
    }
    write_summary(out_dir / "summary.json", cfg, summaries, false, true);

    std::ofstream curve = open_out(out_dir / "free_energy.csv");
    curve << "T,F_vqt,F_oracle,abs_error,L2_final\n";
    for (const RunTrace& t : traces)
        curve << fmt(t.summary.temperature) << "," << fmt(t.summary.L1) << ","
              << fmt(t.summary.oracle) << "," << fmt(t.summary.abs_error) << ","
              << fmt(t.summary.L2) << "\n";
    return all_converged ? 0 : 2;
}

}  // namespace

int run_command(const std::string& subcommand, const std::string& config_path,
                const std::string& out_dir, std::optional<uint64_t> seed_override) {
    RunConfig cfg = parse_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    check_mode(subcommand, cfg.mode);

    const fs::path out(out_dir);
    fs::create_directories(out);

    if (subcommand == "ed") return run_ed(cfg, out);
    if (subcommand == "vqe") return run_single(cfg, out, false);
    if (subcommand == "vqt") return run_single(cfg, out, true);
    if (subcommand == "penalty-sweep") return run_penalty(cfg, out);
    if (subcommand == "temp-sweep") return run_temp_sweep(cfg, out);
    throw std::invalid_argument("unknown subcommand: " + subcommand);
}

}  // namespace lgt
