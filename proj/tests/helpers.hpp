#pragma once

// Shared test utilities. The dense constructions here are written from first
// principles (explicit Kronecker products, explicit gate matrices) so they can
// serve as independent oracles for the library's bit-twiddling paths.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lgt/sim_core.hpp"

namespace testutil {

using lgt::complexd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline MatrixXcd pauli_matrix(char p) {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    const complexd i(0.0, 1.0);
    switch (p) {
        case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
        case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
        case 'Y': m(0, 1) = -i; m(1, 0) = i; break;
        case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    }
    return m;
}

// Dense operator on n qubits with single-qubit matrix m at qubit q (little-endian:
// qubit 0 is the least significant bit, hence the rightmost Kronecker factor).
inline MatrixXcd embed(const MatrixXcd& m, int q, int n) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k)
        out = kron(out, k == q ? m : MatrixXcd::Identity(2, 2));
    return out;
}

inline MatrixXcd term_matrix(const lgt::PauliTerm& term, int n) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
        auto it = term.factors.find(k);
        if (it == term.factors.end()) {
            out = kron(out, MatrixXcd::Identity(2, 2));
        } else {
            char c = it->second == lgt::Pauli::X ? 'X'
                   : it->second == lgt::Pauli::Y ? 'Y' : 'Z';
            out = kron(out, pauli_matrix(c));
        }
    }
    return term.coefficient * out;
}

inline MatrixXcd sum_matrix(const lgt::PauliSum& op, int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    for (const auto& term : op.terms) out += term_matrix(term, n);
    return out;
}

// Dense unitary of a circuit, built gate by gate from explicit matrices.
inline MatrixXcd circuit_unitary(const lgt::Circuit& circuit) {
    const int n = circuit.n_qubits;
    const Eigen::Index dim = Eigen::Index(1) << n;
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    const complexd i(0.0, 1.0);
    for (const auto& g : circuit.gates) {
        MatrixXcd gm;
        if (g.kind == lgt::GateKind::RY) {
            MatrixXcd m(2, 2);
            m << std::cos(g.angle / 2), -std::sin(g.angle / 2),
                 std::sin(g.angle / 2),  std::cos(g.angle / 2);
            gm = embed(m, g.q0, n);
        } else if (g.kind == lgt::GateKind::RZ) {
            MatrixXcd m = MatrixXcd::Zero(2, 2);
            m(0, 0) = std::exp(-i * (g.angle / 2));
            m(1, 1) = std::exp(i * (g.angle / 2));
            gm = embed(m, g.q0, n);
        } else {
            // CNOT: |1><1| on control tensored with X on target.
            const Eigen::Index d = dim;
            gm = MatrixXcd::Zero(d, d);
            for (Eigen::Index x = 0; x < d; ++x) {
                Eigen::Index y = x;
                if ((x >> g.q0) & 1) y = x ^ (Eigen::Index(1) << g.q1);
                gm(y, x) = 1.0;
            }
        }
        u = gm * u;
    }
    return u;
}

inline VectorXcd to_eigen(const lgt::StateVector& s) {
    VectorXcd v(Eigen::Index(s.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = s.amplitudes[size_t(k)];
    return v;
}

inline lgt::StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    lgt::StateVector s = lgt::new_statevector(n);
    double norm_sq = 0.0;
    for (auto& a : s.amplitudes) {
        a = complexd(gauss(rng), gauss(rng));
        norm_sq += std::norm(a);
    }
    for (auto& a : s.amplitudes) a /= std::sqrt(norm_sq);
    return s;
}

inline std::vector<double> random_vector(size_t len, double lo, double hi,
                                         std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> out(len);
    for (auto& v : out) v = u(rng);
    return out;
}

}  // namespace testutil
