#include "lgt/sim_core.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

void check_qubit_range(int q, int n_qubits) {
    if (q < 0 || q >= n_qubits)
        throw std::invalid_argument("qubit index " + std::to_string(q) +
                                    " out of range for " + std::to_string(n_qubits) +
                                    " qubits");
}

void apply_1q(complexd* a, uint64_t size, int q, complexd u00, complexd u01,
              complexd u10, complexd u11) {
    const uint64_t step = uint64_t(1) << q;
    for (uint64_t base = 0; base < size; base += 2 * step) {
        for (uint64_t i = base; i < base + step; ++i) {
            const complexd a0 = a[i];
            const complexd a1 = a[i + step];
            a[i] = u00 * a0 + u01 * a1;
            a[i + step] = u10 * a0 + u11 * a1;
        }
    }
}

void apply_ry(complexd* a, uint64_t size, int q, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const uint64_t step = uint64_t(1) << q;
    for (uint64_t base = 0; base < size; base += 2 * step) {
        for (uint64_t i = base; i < base + step; ++i) {
            const complexd a0 = a[i];
            const complexd a1 = a[i + step];
            a[i] = c * a0 - s * a1;
            a[i + step] = s * a0 + c * a1;
        }
    }
}

void apply_rz(complexd* a, uint64_t size, int q, double angle) {
    const complexd z0 = std::polar(1.0, -angle / 2);
    const complexd z1 = std::polar(1.0, angle / 2);
    const uint64_t step = uint64_t(1) << q;
    for (uint64_t base = 0; base < size; base += 2 * step) {
        for (uint64_t i = base; i < base + step; ++i) {
            a[i] *= z0;
            a[i + step] *= z1;
        }
    }
}

void apply_cnot(complexd* a, uint64_t size, int control, int target) {
    const uint64_t cmask = uint64_t(1) << control;
    const uint64_t tmask = uint64_t(1) << target;
    for (uint64_t x = 0; x < size; ++x) {
        if ((x & cmask) && !(x & tmask)) std::swap(a[x], a[x | tmask]);
    }
}

void apply_gate_amps(complexd* a, uint64_t size, const Gate& g) {
    switch (g.kind) {
        case GateKind::RY: apply_ry(a, size, g.q0, g.angle); break;
        case GateKind::RZ: apply_rz(a, size, g.q0, g.angle); break;
        case GateKind::CNOT: apply_cnot(a, size, g.q0, g.q1); break;
    }
}

// Applies the conjugated gate to a strided row of a density matrix (the U^dagger side).
void apply_gate_row_conj(Eigen::MatrixXcd& m, Eigen::Index row, const Gate& g) {
    const uint64_t size = uint64_t(m.cols());
    switch (g.kind) {
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2);
            const double s = std::sin(g.angle / 2);
            const uint64_t step = uint64_t(1) << g.q0;
            for (uint64_t base = 0; base < size; base += 2 * step) {
                for (uint64_t i = base; i < base + step; ++i) {
                    const complexd a0 = m(row, i);
                    const complexd a1 = m(row, i + step);
                    m(row, i) = c * a0 - s * a1;
                    m(row, i + step) = s * a0 + c * a1;
                }
            }
            break;
        }
        case GateKind::RZ: {
            const complexd z0 = std::polar(1.0, g.angle / 2);
            const complexd z1 = std::polar(1.0, -g.angle / 2);
            const uint64_t step = uint64_t(1) << g.q0;
            for (uint64_t base = 0; base < size; base += 2 * step) {
                for (uint64_t i = base; i < base + step; ++i) {
                    m(row, i) *= z0;
                    m(row, i + step) *= z1;
                }
            }
            break;
        }
        case GateKind::CNOT: {
            const uint64_t cmask = uint64_t(1) << g.q0;
            const uint64_t tmask = uint64_t(1) << g.q1;
            for (uint64_t x = 0; x < size; ++x) {
                if ((x & cmask) && !(x & tmask))
                    std::swap(m(row, x), m(row, x | tmask));
            }
            break;
        }
    }
}

}  // namespace

StateVector new_statevector(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 14)
        throw std::invalid_argument("n_qubits must be in [1, 14], got " +
                                    std::to_string(n_qubits));
    StateVector state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(uint64_t(1) << n_qubits, complexd(0.0, 0.0));
    state.amplitudes[0] = complexd(1.0, 0.0);
    return state;
}

void apply_gate(StateVector& state, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets) {
    const auto dim = Eigen::Index(uint64_t(1) << targets.size());
    if (targets.empty() || targets.size() > 2)
        throw std::invalid_argument("apply_gate supports 1 or 2 targets");
    if (gate.rows() != dim || gate.cols() != dim)
        throw std::invalid_argument("gate dimension does not match target count");
    if ((gate.adjoint() * gate - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() >
        1e-10)
        throw std::invalid_argument("gate is not unitary");
    for (int q : targets) check_qubit_range(q, state.n_qubits);
    if (targets.size() == 2 && targets[0] == targets[1])
        throw std::invalid_argument("duplicate target qubits");

    auto& a = state.amplitudes;
    if (targets.size() == 1) {
        apply_1q(a.data(), a.size(), targets[0], gate(0, 0), gate(0, 1), gate(1, 0),
                 gate(1, 1));
        return;
    }
    const uint64_t m0 = uint64_t(1) << targets[0];
    const uint64_t m1 = uint64_t(1) << targets[1];
    const uint64_t size = a.size();
    for (uint64_t x = 0; x < size; ++x) {
        if (x & (m0 | m1)) continue;
        const uint64_t idx[4] = {x, x | m0, x | m1, x | m0 | m1};
        complexd v[4];
        for (int k = 0; k < 4; ++k) v[k] = a[idx[k]];
        for (int r = 0; r < 4; ++r) {
            complexd acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += gate(r, k) * v[k];
            a[idx[r]] = acc;
        }
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    if (circuit.n_qubits != state.n_qubits)
        throw std::invalid_argument("circuit and state qubit counts differ");
    auto& a = state.amplitudes;
    for (const Gate& g : circuit.gates) apply_gate_amps(a.data(), a.size(), g);
}

CompiledSum compile(const PauliSum& op, int n_qubits) {
    CompiledSum out;
    out.n_qubits = n_qubits;
    out.hermitian = true;
    out.terms.reserve(op.terms.size());
    for (const PauliTerm& term : op.terms) {
        CompiledTerm ct;
        int n_y = 0;
        for (const auto& [q, p] : term.factors) {
            check_qubit_range(q, n_qubits);
            switch (p) {
                case Pauli::X: ct.flip |= uint64_t(1) << q; break;
                case Pauli::Y:
                    ct.flip |= uint64_t(1) << q;
                    ct.phase_mask |= uint64_t(1) << q;
                    ++n_y;
                    break;
                case Pauli::Z: ct.phase_mask |= uint64_t(1) << q; break;
            }
        }
        static const complexd i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        ct.base = term.coefficient * i_pow[n_y % 4];
        if (std::abs(term.coefficient.imag()) > 1e-12) out.hermitian = false;
        out.terms.push_back(ct);
    }
    return out;
}

complexd expectation_value(const StateVector& state, const CompiledSum& op) {
    if (op.n_qubits != state.n_qubits)
        throw std::invalid_argument("observable and state qubit counts differ");
    const auto& a = state.amplitudes;
    const uint64_t size = a.size();
    complexd total = 0.0;
    for (const CompiledTerm& t : op.terms) {
        complexd acc = 0.0;
        if (t.flip == 0) {
            for (uint64_t x = 0; x < size; ++x) {
                const double sign = std::popcount(x & t.phase_mask) & 1 ? -1.0 : 1.0;
                acc += sign * std::norm(a[x]);
            }
        } else {
            for (uint64_t x = 0; x < size; ++x) {
                const double sign = std::popcount(x & t.phase_mask) & 1 ? -1.0 : 1.0;
                acc += sign * std::conj(a[x ^ t.flip]) * a[x];
            }
        }
        total += t.base * acc;
    }
    return total;
}

complexd expectation_value(const DensityMatrix& rho, const CompiledSum& op) {
    if (op.n_qubits != rho.n_qubits)
        throw std::invalid_argument("observable and density matrix qubit counts differ");
    const uint64_t size = rho.size();
    complexd total = 0.0;
    for (const CompiledTerm& t : op.terms) {
        complexd acc = 0.0;
        for (uint64_t x = 0; x < size; ++x) {
            const double sign = std::popcount(x & t.phase_mask) & 1 ? -1.0 : 1.0;
            acc += sign * rho.entries(Eigen::Index(x), Eigen::Index(x ^ t.flip));
        }
        total += t.base * acc;
    }
    return total;
}

namespace {

double real_expectation(complexd value, bool hermitian, const char* what) {
    if (hermitian && std::abs(value.imag()) > 1e-10)
        throw std::logic_error(std::string(what) +
                               ": imaginary part exceeds 1e-10 for a Hermitian observable");
    return value.real();
}

}  // namespace

double pauli_expectation(const StateVector& state, const PauliSum& observable) {
    const CompiledSum op = compile(observable, state.n_qubits);
    return real_expectation(expectation_value(state, op), op.hermitian, "pauli_expectation");
}

DensityMatrix density_from_angles(const std::vector<double>& phi) {
    const int n = int(phi.size());
    if (n < 1 || n > 14)
        throw std::invalid_argument("phi length must be in [1, 14]");
    std::vector<double> p0(n), p1(n);
    for (int i = 0; i < n; ++i) {
        const double s = std::sin(phi[i]);
        const double c = std::cos(phi[i]);
        p0[i] = s * s;
        p1[i] = c * c;
    }
    DensityMatrix rho;
    rho.n_qubits = n;
    const uint64_t size = uint64_t(1) << n;
    rho.entries = Eigen::MatrixXcd::Zero(Eigen::Index(size), Eigen::Index(size));
    for (uint64_t x = 0; x < size; ++x) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) w *= (x >> i) & 1 ? p1[i] : p0[i];
        rho.entries(Eigen::Index(x), Eigen::Index(x)) = w;
    }
    return rho;
}

DensityMatrix evolve_density(const DensityMatrix& rho, const Circuit& circuit) {
    if (circuit.n_qubits != rho.n_qubits)
        throw std::invalid_argument("circuit and density matrix qubit counts differ");
    DensityMatrix out = rho;
    const Eigen::Index size = out.entries.rows();
    for (const Gate& g : circuit.gates) {
        for (Eigen::Index j = 0; j < size; ++j)
            apply_gate_amps(out.entries.col(j).data(), uint64_t(size), g);
        for (Eigen::Index i = 0; i < size; ++i) apply_gate_row_conj(out.entries, i, g);
    }
    return out;
}

double density_expectation(const DensityMatrix& rho, const PauliSum& observable) {
    const CompiledSum op = compile(observable, rho.n_qubits);
    return real_expectation(expectation_value(rho, op), op.hermitian, "density_expectation");
}

Eigen::MatrixXcd dense_matrix(const PauliSum& op, int n_qubits) {
    const CompiledSum compiled = compile(op, n_qubits);
    const uint64_t size = uint64_t(1) << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(size), Eigen::Index(size));
    for (const CompiledTerm& t : compiled.terms) {
        for (uint64_t x = 0; x < size; ++x) {
            const double sign = std::popcount(x & t.phase_mask) & 1 ? -1.0 : 1.0;
            m(Eigen::Index(x ^ t.flip), Eigen::Index(x)) += t.base * sign;
        }
    }
    return m;
}

}  // namespace lgt
