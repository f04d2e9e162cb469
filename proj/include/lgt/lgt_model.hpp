#pragma once

#include <cstdint>
#include <vector>

#include "lgt/sim_core.hpp"

namespace lgt {

enum class Boundary { periodic, open_dangling };

// 1D Z2 gauge theory with spinless fermions on N sites.
//
// periodic:      fermion qubits at even indices 2j, gauge (link) qubits at odd
//                indices 2j+1, n_qubits = 2N; link j connects sites j and j+1 mod N.
// open_dangling: gauge qubits at even indices 2j (N+1 links including the two
//                dangling ends), fermion qubits at odd indices 2j+1, n_qubits = 2N+1.
struct ModelSpec {
    int n_sites = 2;
    double t = 1.0;
    double h = 0.5;
    Boundary boundary = Boundary::periodic;

    int n_qubits() const {
        return boundary == Boundary::periodic ? 2 * n_sites : 2 * n_sites + 1;
    }
    int fermion_qubit(int site) const {
        return boundary == Boundary::periodic ? 2 * site : 2 * site + 1;
    }
    int gauge_qubit(int link) const {
        return boundary == Boundary::periodic ? 2 * link + 1 : 2 * link;
    }
    int n_links() const {
        return boundary == Boundary::periodic ? n_sites : n_sites + 1;
    }
    void validate() const;
};

struct PhysicalBasis {
    std::vector<uint64_t> indices;       // ascending computational-basis indices
    std::vector<int> enforced;           // which Gauss constraints were enforced
    int n_independent_constraints = 0;   // GF(2) rank of the enforced Z-string masks

    int dimension() const { return int(indices.size()); }
};

// H = -t sum_j (sigma+_f(j) X_g(j) sigma-_f(j+1) + h.c.) - h sum_links Z_g, expanded
// into X/Y Pauli strings. The periodic wrap term carries the Jordan-Wigner parity
// string over the interior fermion qubits.
PauliSum build_hamiltonian(const ModelSpec& spec);

// G_j = Z(left link) Z(fermion j) Z(right link), one per site.
std::vector<PauliSum> gauss_operators(const ModelSpec& spec);

PhysicalBasis enumerate_physical_basis(const ModelSpec& spec);
PhysicalBasis enumerate_physical_basis(const ModelSpec& spec,
                                       const std::vector<int>& enforced);

struct GroundResult {
    double energy = 0.0;
    StateVector state;  // embedded back into the full 2^n space
};

// Diagonalizes H restricted to the physical basis.
GroundResult ed_ground(const ModelSpec& spec);

struct ThermalResult {
    double free_energy = 0.0;  // E - T*S
    DensityMatrix rho;         // Gibbs state on the physical subspace, zero elsewhere
    double energy = 0.0;
    double entropy = 0.0;
    double log_partition = 0.0;  // log Z of the restricted Hamiltonian
};

ThermalResult ed_thermal(const ModelSpec& spec, double T);

}  // namespace lgt
