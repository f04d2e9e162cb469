#include "lgt/lgt_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace lgt {

void ModelSpec::validate() const {
    const int min_sites = boundary == Boundary::periodic ? 2 : 1;
    if (n_sites < min_sites)
        throw std::invalid_argument("n_sites must be >= " + std::to_string(min_sites) +
                                    " for this boundary, got " + std::to_string(n_sites));
    if (n_qubits() > 14)
        throw std::invalid_argument("model needs " + std::to_string(n_qubits()) +
                                    " qubits; 14 is the supported maximum");
}

PauliSum build_hamiltonian(const ModelSpec& spec) {
    spec.validate();
    PauliSum H;
    const int N = spec.n_sites;
    const int n_hops = spec.boundary == Boundary::periodic ? N : N - 1;
    for (int j = 0; j < n_hops; ++j) {
        const int a = spec.fermion_qubit(j);
        const int g = spec.gauge_qubit(j);
        const int b = spec.fermion_qubit((j + 1) % N);
        // sigma+ sigma- + h.c. = (XX + YY)/2 on the fermion pair; the wrap term picks
        // up the Jordan-Wigner Z string across the interior fermion qubits.
        std::map<int, Pauli> string;
        if (spec.boundary == Boundary::periodic && j == N - 1)
            for (int l = 1; l < N - 1; ++l) string[spec.fermion_qubit(l)] = Pauli::Z;

        PauliTerm xx{complexd(-spec.t / 2, 0.0), string};
        xx.factors[a] = Pauli::X;
        xx.factors[g] = Pauli::X;
        xx.factors[b] = Pauli::X;
        PauliTerm yy{complexd(-spec.t / 2, 0.0), string};
        yy.factors[a] = Pauli::Y;
        yy.factors[g] = Pauli::X;
        yy.factors[b] = Pauli::Y;
        H += xx;
        H += yy;
    }
    for (int l = 0; l < spec.n_links(); ++l)
        H += PauliTerm{complexd(-spec.h, 0.0), {{spec.gauge_qubit(l), Pauli::Z}}};
    return H;
}

std::vector<PauliSum> gauss_operators(const ModelSpec& spec) {
    spec.validate();
    std::vector<PauliSum> ops;
    const int N = spec.n_sites;
    for (int j = 0; j < N; ++j) {
        const int left = spec.boundary == Boundary::periodic
                             ? spec.gauge_qubit((j - 1 + N) % N)
                             : spec.gauge_qubit(j);
        const int right = spec.boundary == Boundary::periodic ? spec.gauge_qubit(j)
                                                              : spec.gauge_qubit(j + 1);
        PauliSum g;
        g += PauliTerm{complexd(1.0, 0.0),
                       {{left, Pauli::Z}, {spec.fermion_qubit(j), Pauli::Z}, {right, Pauli::Z}}};
        ops.push_back(std::move(g));
    }
    return ops;
}

namespace {

uint64_t z_string_mask(const PauliSum& g) {
    uint64_t mask = 0;
    for (const PauliTerm& term : g.terms)
        for (const auto& [q, p] : term.factors) mask |= uint64_t(1) << q;
    return mask;
}

int gf2_rank(std::vector<uint64_t> rows) {
    int rank = 0;
    for (int b = 0; b < 64; ++b) {
        auto piv = std::find_if(rows.begin(), rows.end(),
                                [&](uint64_t r) { return (r >> b) & 1; });
        if (piv == rows.end()) continue;
        const uint64_t pr = *piv;
        rows.erase(piv);
        for (uint64_t& r : rows)
            if ((r >> b) & 1) r ^= pr;
        ++rank;
    }
    return rank;
}

}  // namespace

PhysicalBasis enumerate_physical_basis(const ModelSpec& spec,
                                       const std::vector<int>& enforced) {
    spec.validate();
    const auto ops = gauss_operators(spec);
    std::vector<uint64_t> masks;
    for (int j : enforced) {
        if (j < 0 || j >= int(ops.size()))
            throw std::invalid_argument("constraint index " + std::to_string(j) +
                                        " out of range");
        masks.push_back(z_string_mask(ops[size_t(j)]));
    }
    PhysicalBasis basis;
    basis.enforced = enforced;
    basis.n_independent_constraints = gf2_rank(masks);
    const uint64_t size = uint64_t(1) << spec.n_qubits();
    for (uint64_t x = 0; x < size; ++x) {
        bool keep = true;
        for (uint64_t m : masks)
            if (std::popcount(x & m) & 1) {
                keep = false;
                break;
            }
        if (keep) basis.indices.push_back(x);
    }
    return basis;
}

PhysicalBasis enumerate_physical_basis(const ModelSpec& spec) {
    std::vector<int> all(size_t(spec.n_sites));
    for (int j = 0; j < spec.n_sites; ++j) all[size_t(j)] = j;
    return enumerate_physical_basis(spec, all);
}

namespace {

Eigen::MatrixXcd restricted_hamiltonian(const ModelSpec& spec, const PhysicalBasis& basis) {
    const Eigen::MatrixXcd Hd = dense_matrix(build_hamiltonian(spec), spec.n_qubits());
    const int d = basis.dimension();
    Eigen::MatrixXcd Ht(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            Ht(r, c) = Hd(Eigen::Index(basis.indices[size_t(r)]),
                          Eigen::Index(basis.indices[size_t(c)]));
    return Ht;
}

}  // namespace

GroundResult ed_ground(const ModelSpec& spec) {
    spec.validate();
    const PhysicalBasis basis = enumerate_physical_basis(spec);
    const Eigen::MatrixXcd Ht = restricted_hamiltonian(spec, basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Ht);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    GroundResult result;
    result.energy = solver.eigenvalues()(0);
    result.state.n_qubits = spec.n_qubits();
    result.state.amplitudes.assign(uint64_t(1) << spec.n_qubits(), complexd(0.0, 0.0));
    const auto vec = solver.eigenvectors().col(0);
    for (int r = 0; r < basis.dimension(); ++r)
        result.state.amplitudes[basis.indices[size_t(r)]] = vec(r);
    return result;
}

ThermalResult ed_thermal(const ModelSpec& spec, double T) {
    spec.validate();
    if (T <= 0.0) throw std::invalid_argument("temperature must be positive");
    if (spec.n_qubits() > 12)
        throw std::invalid_argument("ed_thermal supports at most 12 qubits");
    const PhysicalBasis basis = enumerate_physical_basis(spec);
    const Eigen::MatrixXcd Ht = restricted_hamiltonian(spec, basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Ht);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXd evals = solver.eigenvalues();
    const int d = basis.dimension();

    // Shift by the ground energy so the partition sum is stable at small T.
    const double e0 = evals(0);
    Eigen::VectorXd weights(d);
    double zshift = 0.0;
    for (int i = 0; i < d; ++i) {
        weights(i) = std::exp(-(evals(i) - e0) / T);
        zshift += weights(i);
    }
    ThermalResult result;
    result.log_partition = std::log(zshift) - e0 / T;
    double energy = 0.0, entropy = 0.0;
    for (int i = 0; i < d; ++i) {
        const double p = weights(i) / zshift;
        energy += p * evals(i);
        if (p > 0.0) entropy -= p * std::log(p);
    }
    result.energy = energy;
    result.entropy = entropy;
    result.free_energy = energy - T * entropy;

    const Eigen::MatrixXcd block = solver.eigenvectors() *
                                   (weights / zshift).asDiagonal() *
                                   solver.eigenvectors().adjoint();
    result.rho.n_qubits = spec.n_qubits();
    const uint64_t size = uint64_t(1) << spec.n_qubits();
    result.rho.entries = Eigen::MatrixXcd::Zero(Eigen::Index(size), Eigen::Index(size));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            result.rho.entries(Eigen::Index(basis.indices[size_t(r)]),
                               Eigen::Index(basis.indices[size_t(c)])) = block(r, c);
    return result;
}

}  // namespace lgt
