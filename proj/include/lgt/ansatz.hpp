#pragma once

#include <vector>

#include "lgt/sim_core.hpp"

namespace lgt {

// One slot of the layered template: a parameterized rotation (param_index >= 0)
// or a fixed entangler (param_index == -1, q1 = CNOT target).
struct GateSlot {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    int param_index = -1;
};

struct AnsatzTemplate {
    int n_qubits = 0;
    int n_blocks = 0;
    std::vector<GateSlot> slots;

    int parameter_count() const { return 2 * n_qubits * n_blocks; }
};

// Each block: RY on every qubit, RZ on every qubit, then CNOT entanglers on
// (q, q+1) for q = 0..n-2 plus (n-1, 0) closing the ring. `ring = false` drops
// the closing entangler (open chain).
AnsatzTemplate build_ansatz(int n_qubits, int n_blocks, bool ring = true);

Circuit bind_parameters(const AnsatzTemplate& tmpl, const std::vector<double>& theta);

}  // namespace lgt
