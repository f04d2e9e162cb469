#include "lgt/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace lgt {

AnsatzTemplate build_ansatz(int n_qubits, int n_blocks, bool ring) {
    if (n_qubits < 2)
        throw std::invalid_argument("build_ansatz requires n_qubits >= 2, got " +
                                    std::to_string(n_qubits));
    if (n_blocks < 1)
        throw std::invalid_argument("build_ansatz requires n_blocks >= 1, got " +
                                    std::to_string(n_blocks));
    AnsatzTemplate tmpl;
    tmpl.n_qubits = n_qubits;
    tmpl.n_blocks = n_blocks;
    int next_param = 0;
    for (int block = 0; block < n_blocks; ++block) {
        for (int q = 0; q < n_qubits; ++q)
            tmpl.slots.push_back({GateKind::RY, q, -1, next_param++});
        for (int q = 0; q < n_qubits; ++q)
            tmpl.slots.push_back({GateKind::RZ, q, -1, next_param++});
        for (int q = 0; q + 1 < n_qubits; ++q)
            tmpl.slots.push_back({GateKind::CNOT, q, q + 1, -1});
        if (ring) tmpl.slots.push_back({GateKind::CNOT, n_qubits - 1, 0, -1});
    }
    return tmpl;
}

Circuit bind_parameters(const AnsatzTemplate& tmpl, const std::vector<double>& theta) {
    if (int(theta.size()) != tmpl.parameter_count())
        throw std::invalid_argument("parameter vector length " +
                                    std::to_string(theta.size()) + " does not match " +
                                    std::to_string(tmpl.parameter_count()));
    Circuit circuit;
    circuit.n_qubits = tmpl.n_qubits;
    circuit.gates.reserve(tmpl.slots.size());
    for (const GateSlot& slot : tmpl.slots) {
        Gate g{slot.kind, slot.q0, slot.q1, 0.0};
        if (slot.param_index >= 0) g.angle = theta[size_t(slot.param_index)];
        circuit.gates.push_back(g);
    }
    return circuit;
}

}  // namespace lgt
