#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace lgt {

using complexd = std::complex<double>;

enum class Pauli { X, Y, Z };

// Single tensor product of Pauli factors; qubits absent from `factors` carry identity.
struct PauliTerm {
    complexd coefficient{1.0, 0.0};
    std::map<int, Pauli> factors;
};

struct PauliSum {
    std::vector<PauliTerm> terms;

    PauliSum& operator+=(const PauliTerm& term) {
        terms.push_back(term);
        return *this;
    }
};

// Dense pure state, little-endian: qubit 0 is the least significant bit of the index.
struct StateVector {
    int n_qubits = 0;
    std::vector<complexd> amplitudes;

    uint64_t size() const { return uint64_t(1) << n_qubits; }
};

struct DensityMatrix {
    int n_qubits = 0;
    Eigen::MatrixXcd entries;

    uint64_t size() const { return uint64_t(1) << n_qubits; }
};

enum class GateKind { RY, RZ, CNOT };

// RY/RZ act on q0 with `angle`; CNOT uses q0 as control, q1 as target.
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

StateVector new_statevector(int n_qubits);

// Generic gate application. `gate` must be 2x2 (one target) or 4x4 (two targets),
// unitary within 1e-10. For two targets the subspace index is bit(targets[0]) +
// 2*bit(targets[1]).
void apply_gate(StateVector& state, const Eigen::MatrixXcd& gate,
                const std::vector<int>& targets);

void apply_circuit(StateVector& state, const Circuit& circuit);

double pauli_expectation(const StateVector& state, const PauliSum& observable);

// Diagonal product state: qubit i contributes sin^2(phi_i) on |0> and cos^2(phi_i) on |1>.
DensityMatrix density_from_angles(const std::vector<double>& phi);

// U rho U^dagger for the circuit's unitary. Linear in rho (works on any matrix,
// e.g. derivatives of a density matrix, not just trace-one states).
DensityMatrix evolve_density(const DensityMatrix& rho, const Circuit& circuit);

double density_expectation(const DensityMatrix& rho, const PauliSum& observable);

Eigen::MatrixXcd dense_matrix(const PauliSum& op, int n_qubits);

// Bit-mask form of a PauliTerm for the hot loops:
// P|x> = base * (-1)^popcount(x & phase_mask) |x XOR flip>.
struct CompiledTerm {
    uint64_t flip = 0;
    uint64_t phase_mask = 0;
    complexd base{0.0, 0.0};
};

struct CompiledSum {
    int n_qubits = 0;
    std::vector<CompiledTerm> terms;
    bool hermitian = false;
};

CompiledSum compile(const PauliSum& op, int n_qubits);

complexd expectation_value(const StateVector& state, const CompiledSum& op);
complexd expectation_value(const DensityMatrix& rho, const CompiledSum& op);

}  // namespace lgt
