#include "lgt/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void check_theta(const ObjectiveContext& ctx, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != ctx.tmpl.parameter_count())
        throw std::invalid_argument("theta length does not match ansatz parameter count");
}

void check_phi(const ObjectiveContext& ctx, const std::vector<double>& phi) {
    if (static_cast<int>(phi.size()) != ctx.tmpl.n_qubits)
        throw std::invalid_argument("phi length does not match qubit count");
}

StateVector run_circuit(const Circuit& circuit) {
    StateVector state = new_statevector(circuit.n_qubits);
    apply_circuit(state, circuit);
    return state;
}

double real_expectation(const CompiledSum& op, const StateVector& state) {
    return expectation_value(state, op).real();
}

double real_expectation(const CompiledSum& op, const DensityMatrix& rho) {
    return expectation_value(rho, op).real();
}

struct PointEval {
    double energy = 0.0;
    std::vector<double> gauss;  // <G_j> per constraint
};

PointEval eval_state(const ObjectiveContext& ctx, const Circuit& circuit) {
    StateVector state = run_circuit(circuit);
    PointEval out;
    out.energy = real_expectation(ctx.hamiltonian, state);
    out.gauss.reserve(ctx.gauss.size());
    for (const auto& g : ctx.gauss) out.gauss.push_back(real_expectation(g, state));
    return out;
}

PointEval eval_density(const ObjectiveContext& ctx, const DensityMatrix& rho0,
                       const Circuit& circuit) {
    DensityMatrix rho = evolve_density(rho0, circuit);
    PointEval out;
    out.energy = real_expectation(ctx.hamiltonian, rho);
    out.gauss.reserve(ctx.gauss.size());
    for (const auto& g : ctx.gauss) out.gauss.push_back(real_expectation(g, rho));
    return out;
}

double violation_from(const std::vector<double>& gauss) {
    double l2 = 0.0;
    for (double gv : gauss) l2 += std::abs(gv - 1.0);
    return l2;
}

// Diagonal matrix d rho0 / d phi_i for the product distribution of
// density_from_angles: the factor for qubit i is replaced by its derivative
// +-sin(2 phi_i), all other factors unchanged.
DensityMatrix derivative_diagonal(const std::vector<double>& phi, int i) {
    const int n = static_cast<int>(phi.size());
    const uint64_t dim = uint64_t{1} << n;
    DensityMatrix d;
    d.n_qubits = n;
    d.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                       static_cast<Eigen::Index>(dim));
    const double dsin = std::sin(2.0 * phi[static_cast<size_t>(i)]);
    for (uint64_t x = 0; x < dim; ++x) {
        double w = ((x >> i) & 1u) ? -dsin : dsin;
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double s = std::sin(phi[static_cast<size_t>(l)]);
            const double c = std::cos(phi[static_cast<size_t>(l)]);
            w *= ((x >> l) & 1u) ? c * c : s * s;
        }
        d.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = w;
    }
    return d;
}

}  // namespace

ObjectiveContext::ObjectiveContext(const ModelSpec& model_spec, const AnsatzTemplate& ansatz)
    : spec(model_spec), tmpl(ansatz) {
    spec.validate();
    if (tmpl.n_qubits != spec.n_qubits())
        throw std::invalid_argument("ansatz qubit count does not match model");
    hamiltonian = compile(build_hamiltonian(spec), spec.n_qubits());
    for (const auto& g : gauss_operators(spec)) gauss.push_back(compile(g, spec.n_qubits()));
    param_gate.assign(static_cast<size_t>(tmpl.parameter_count()), -1);
    for (size_t pos = 0; pos < tmpl.slots.size(); ++pos) {
        const int p = tmpl.slots[pos].param_index;
        if (p >= 0) param_gate[static_cast<size_t>(p)] = static_cast<int>(pos);
    }
}

double vqe_energy(const ObjectiveContext& ctx, const std::vector<double>& theta) {
    check_theta(ctx, theta);
    StateVector state = run_circuit(bind_parameters(ctx.tmpl, theta));
    return real_expectation(ctx.hamiltonian, state);
}

double gauss_violation(const ObjectiveContext& ctx, const std::vector<double>& theta) {
    check_theta(ctx, theta);
    StateVector state = run_circuit(bind_parameters(ctx.tmpl, theta));
    double l2 = 0.0;
    for (const auto& g : ctx.gauss) l2 += std::abs(real_expectation(g, state) - 1.0);
    return l2;
}

double penalty_cost(const ObjectiveContext& ctx, const std::vector<double>& theta,
                    double mu) {
    if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
    check_theta(ctx, theta);
    StateVector state = run_circuit(bind_parameters(ctx.tmpl, theta));
    double energy = real_expectation(ctx.hamiltonian, state);
    double l2 = 0.0;
    for (const auto& g : ctx.gauss) l2 += std::abs(real_expectation(g, state) - 1.0);
    return energy + mu * l2;
}

// Probabilities this close to 0 mark a singular angle; pi/2 itself is not
// representable, so sin^2 lands ~4e-33 shy of 1 and both functions must still
// return the exact limit there.
constexpr double kCornerProb = 1e-18;

double entropy(const std::vector<double>& phi) {
    double s = 0.0;
    for (double angle : phi) {
        const double sn = std::sin(angle);
        const double cs = std::cos(angle);
        const double p0 = sn * sn;
        const double p1 = cs * cs;
        if (p0 <= kCornerProb || p1 <= kCornerProb) continue;
        s -= p0 * std::log(p0) + p1 * std::log(p1);
    }
    return s;
}

std::vector<double> entropy_gradient(const std::vector<double>& phi) {
    std::vector<double> grad(phi.size(), 0.0);
    for (size_t i = 0; i < phi.size(); ++i) {
        const double sn = std::sin(phi[i]);
        const double cs = std::cos(phi[i]);
        const double s2 = sn * sn;
        const double c2 = cs * cs;
        if (s2 <= kCornerProb || c2 <= kCornerProb) continue;  // limit 0
        grad[i] = std::sin(2.0 * phi[i]) * std::log(c2 / s2);
    }
    return grad;
}

double vqt_free_energy(const ObjectiveContext& ctx, const std::vector<double>& theta,
                       const std::vector<double>& phi, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be > 0");
    check_theta(ctx, theta);
    check_phi(ctx, phi);
    DensityMatrix rho0 = density_from_angles(phi);
    DensityMatrix rho = evolve_density(rho0, bind_parameters(ctx.tmpl, theta));
    return real_expectation(ctx.hamiltonian, rho) - T * entropy(phi);
}

double vqt_gauss_violation(const ObjectiveContext& ctx, const std::vector<double>& theta,
                           const std::vector<double>& phi) {
    check_theta(ctx, theta);
    check_phi(ctx, phi);
    DensityMatrix rho0 = density_from_angles(phi);
    DensityMatrix rho = evolve_density(rho0, bind_parameters(ctx.tmpl, theta));
    double l2 = 0.0;
    for (const auto& g : ctx.gauss) l2 += std::abs(real_expectation(g, rho) - 1.0);
    return l2;
}

double vqt_penalty_cost(const ObjectiveContext& ctx, const std::vector<double>& theta,
                        const std::vector<double>& phi, double T, double mu) {
    if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
    return vqt_free_energy(ctx, theta, phi, T) +
           mu * vqt_gauss_violation(ctx, theta, phi);
}

PairEvaluation vqe_pair(const ObjectiveContext& ctx, const std::vector<double>& theta) {
    check_theta(ctx, theta);
    const int n_params = ctx.tmpl.parameter_count();
    const size_t n_gauss = ctx.gauss.size();

    Circuit circuit = bind_parameters(ctx.tmpl, theta);
    PointEval base = eval_state(ctx, circuit);

    PairEvaluation out;
    out.L1 = base.energy;
    out.L2 = violation_from(base.gauss);
    out.grad_L1.assign(static_cast<size_t>(n_params), 0.0);
    out.grad_L2.assign(static_cast<size_t>(n_params), 0.0);

    std::vector<int> signs(n_gauss);
    for (size_t j = 0; j < n_gauss; ++j) signs[j] = sign_of(base.gauss[j] - 1.0);

    for (int k = 0; k < n_params; ++k) {
        Gate& gate = circuit.gates[static_cast<size_t>(ctx.param_gate[static_cast<size_t>(k)])];
        const double saved = gate.angle;

        gate.angle = saved + kHalfPi;
        PointEval plus = eval_state(ctx, circuit);
        gate.angle = saved - kHalfPi;
        PointEval minus = eval_state(ctx, circuit);
        gate.angle = saved;

        out.grad_L1[static_cast<size_t>(k)] = 0.5 * (plus.energy - minus.energy);
        double g2 = 0.0;
        for (size_t j = 0; j < n_gauss; ++j)
            g2 += signs[j] * 0.5 * (plus.gauss[j] - minus.gauss[j]);
        out.grad_L2[static_cast<size_t>(k)] = g2;
    }
    return out;
}

PairEvaluation vqt_pair(const ObjectiveContext& ctx, const std::vector<double>& theta,
                        const std::vector<double>& phi, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be > 0");
    check_theta(ctx, theta);
    check_phi(ctx, phi);
    const int n_params = ctx.tmpl.parameter_count();
    const int n_qubits = ctx.tmpl.n_qubits;
    const size_t n_gauss = ctx.gauss.size();

    Circuit circuit = bind_parameters(ctx.tmpl, theta);
    DensityMatrix rho0 = density_from_angles(phi);
    PointEval base = eval_density(ctx, rho0, circuit);
    const double s_val = entropy(phi);
    const std::vector<double> s_grad = entropy_gradient(phi);

    PairEvaluation out;
    out.L1 = base.energy - T * s_val;
    out.L2 = violation_from(base.gauss);
    const size_t total = static_cast<size_t>(n_params + n_qubits);
    out.grad_L1.assign(total, 0.0);
    out.grad_L2.assign(total, 0.0);

    std::vector<int> signs(n_gauss);
    for (size_t j = 0; j < n_gauss; ++j) signs[j] = sign_of(base.gauss[j] - 1.0);

    // theta components: parameter shift on the circuit, fixed input state.
    for (int k = 0; k < n_params; ++k) {
        Gate& gate = circuit.gates[static_cast<size_t>(ctx.param_gate[static_cast<size_t>(k)])];
        const double saved = gate.angle;

        gate.angle = saved + kHalfPi;
        PointEval plus = eval_density(ctx, rho0, circuit);
        gate.angle = saved - kHalfPi;
        PointEval minus = eval_density(ctx, rho0, circuit);
        gate.angle = saved;

        out.grad_L1[static_cast<size_t>(k)] = 0.5 * (plus.energy - minus.energy);
        double g2 = 0.0;
        for (size_t j = 0; j < n_gauss; ++j)
            g2 += signs[j] * 0.5 * (plus.gauss[j] - minus.gauss[j]);
        out.grad_L2[static_cast<size_t>(k)] = g2;
    }

    // phi components: evolve the derivative of the diagonal input through the
    // (linear) channel, then add the analytic entropy term.
    for (int i = 0; i < n_qubits; ++i) {
        DensityMatrix d0 = derivative_diagonal(phi, i);
        DensityMatrix d = evolve_density(d0, circuit);
        const double de = real_expectation(ctx.hamiltonian, d);
        const size_t slot = static_cast<size_t>(n_params + i);
        out.grad_L1[slot] = de - T * s_grad[static_cast<size_t>(i)];
        double g2 = 0.0;
        for (size_t j = 0; j < n_gauss; ++j)
            g2 += signs[j] * real_expectation(ctx.gauss[j], d);
        out.grad_L2[slot] = g2;
    }
    return out;
}

std::vector<double> gradient(const ObjectiveContext& ctx, ObjectiveKind kind,
                             const ThetaPhi& params, double T, double mu) {
    switch (kind) {
        case ObjectiveKind::vqe_energy:
            return vqe_pair(ctx, params.theta).grad_L1;
        case ObjectiveKind::vqe_gauss:
            return vqe_pair(ctx, params.theta).grad_L2;
        case ObjectiveKind::vqe_penalty: {
            if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
            PairEvaluation pair = vqe_pair(ctx, params.theta);
            std::vector<double> g(pair.grad_L1.size());
            for (size_t i = 0; i < g.size(); ++i)
                g[i] = pair.grad_L1[i] + mu * pair.grad_L2[i];
            return g;
        }
        case ObjectiveKind::vqt_free_energy:
            return vqt_pair(ctx, params.theta, params.phi, T).grad_L1;
        case ObjectiveKind::vqt_gauss:
            return vqt_pair(ctx, params.theta, params.phi, T).grad_L2;
        case ObjectiveKind::vqt_penalty: {
            if (mu < 0.0) throw std::invalid_argument("mu must be >= 0");
            PairEvaluation pair = vqt_pair(ctx, params.theta, params.phi, T);
            std::vector<double> g(pair.grad_L1.size());
            for (size_t i = 0; i < g.size(); ++i)
                g[i] = pair.grad_L1[i] + mu * pair.grad_L2[i];
            return g;
        }
    }
    throw std::logic_error("unknown objective kind");
}

}  // namespace lgt
