#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "lgt/lgt_model.hpp"

using namespace lgt;
namespace tu = testutil;

namespace {

// Frozen oracle values (t=1, h=0.5), cross-checked against an independent
// implementation when first computed.
const double kE0N2 = -1.0;
const double kE0N2Unconstrained = -2.2360679774997898;
const double kE0N3 = -2.0615528128088307;
const double kF05 = -1.1269280110429727;
const double kF10 = -1.6265233750364456;
const double kF15 = -2.2431102605562163;
const double kF20 = -2.8963079367204267;

// Independent dense construction straight from second quantization: explicit
// Jordan-Wigner annihilators (string over fermion qubits in site order), X on
// the connecting gauge qubit, -h Z on every link.
Eigen::MatrixXcd jw_dense_oracle(const ModelSpec& spec) {
    const int n = spec.n_qubits();
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd lower(2, 2);
    lower << 0, 1, 0, 0;  // |0><1| with |1> = occupied

    std::vector<Eigen::MatrixXcd> a;
    for (int m = 0; m < spec.n_sites; ++m) {
        Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
        for (int k = 0; k < m; ++k)
            op = op * tu::embed(tu::pauli_matrix('Z'), spec.fermion_qubit(k), n);
        op = op * tu::embed(lower, spec.fermion_qubit(m), n);
        a.push_back(op);
    }

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const int n_hops = spec.boundary == Boundary::periodic ? spec.n_sites : spec.n_sites - 1;
    for (int j = 0; j < n_hops; ++j) {
        const Eigen::MatrixXcd X =
            tu::embed(tu::pauli_matrix('X'), spec.gauge_qubit(j), n);
        const Eigen::MatrixXcd hop =
            a[size_t(j)].adjoint() * X * a[size_t((j + 1) % spec.n_sites)];
        H += -spec.t * (hop + Eigen::MatrixXcd(hop.adjoint()));
    }
    for (int l = 0; l < spec.n_links(); ++l)
        H += -spec.h * tu::embed(tu::pauli_matrix('Z'), spec.gauge_qubit(l), n);
    return H;
}

double unconstrained_ground(const ModelSpec& spec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        dense_matrix(build_hamiltonian(spec), spec.n_qubits()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("spec validation") {
    ModelSpec bad;
    bad.n_sites = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.boundary = Boundary::open_dangling;
    CHECK_NOTHROW(bad.validate());
    bad.n_sites = 8;
    bad.boundary = Boundary::periodic;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // 16 qubits
}

TEST_CASE("hamiltonian structure for N=2") {
    ModelSpec spec;
    PauliSum H = build_hamiltonian(spec);
    Eigen::MatrixXcd Hd = tu::sum_matrix(H, 4);
    CHECK((Hd - Eigen::MatrixXcd(Hd.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(Hd.trace()) < 1e-12);
    CHECK(std::abs(Hd(0, 0).real() - (-1.0)) < 1e-12);  // -h per gauge qubit

    StateVector zero = new_statevector(4);
    CHECK(pauli_expectation(zero, H) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("dense Hamiltonian matches the second-quantized oracle") {
    SUBCASE("periodic N=2") {
        ModelSpec spec;
        Eigen::MatrixXcd lib = dense_matrix(build_hamiltonian(spec), spec.n_qubits());
        CHECK((lib - jw_dense_oracle(spec)).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("periodic N=3 (wrap term carries the parity string)") {
        ModelSpec spec;
        spec.n_sites = 3;
        Eigen::MatrixXcd lib = dense_matrix(build_hamiltonian(spec), spec.n_qubits());
        CHECK((lib - jw_dense_oracle(spec)).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("open_dangling N=2") {
        ModelSpec spec;
        spec.boundary = Boundary::open_dangling;
        Eigen::MatrixXcd lib = dense_matrix(build_hamiltonian(spec), spec.n_qubits());
        CHECK((lib - jw_dense_oracle(spec)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("gauss operators") {
    ModelSpec spec;
    auto ops = gauss_operators(spec);
    REQUIRE(ops.size() == 2);

    SUBCASE("Z strings on the documented qubits") {
        std::set<std::set<int>> strings;
        for (const auto& g : ops) {
            REQUIRE(g.terms.size() == 1);
            std::set<int> qubits;
            for (const auto& [q, p] : g.terms[0].factors) {
                CHECK(p == Pauli::Z);
                qubits.insert(q);
            }
            strings.insert(qubits);
        }
        CHECK(strings == std::set<std::set<int>>{{3, 0, 1}, {1, 2, 3}});
    }
    SUBCASE("|0...0> satisfies every constraint") {
        StateVector zero = new_statevector(4);
        for (const auto& g : ops)
            CHECK(pauli_expectation(zero, g) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("eigenvalues +-1 with equal multiplicity") {
        for (const auto& g : ops) {
            uint64_t mask = 0;
            for (const auto& [q, p] : g.terms[0].factors) mask |= uint64_t(1) << q;
            int plus = 0;
            for (uint64_t x = 0; x < 16; ++x)
                if ((std::popcount(x & mask) & 1) == 0) ++plus;
            CHECK(plus == 8);
        }
    }
}

TEST_CASE("gauge symmetry: H commutes with every Gauss operator") {
    for (int N : {2, 3}) {
        ModelSpec spec;
        spec.n_sites = N;
        const int n = spec.n_qubits();
        Eigen::MatrixXcd Hd = dense_matrix(build_hamiltonian(spec), n);
        std::vector<Eigen::MatrixXcd> gs;
        for (const auto& g : gauss_operators(spec)) gs.push_back(dense_matrix(g, n));
        for (const auto& G : gs)
            CHECK((Hd * G - G * Hd).cwiseAbs().maxCoeff() < 1e-10);
        for (size_t j = 0; j < gs.size(); ++j)
            for (size_t k = j + 1; k < gs.size(); ++k)
                CHECK((gs[j] * gs[k] - gs[k] * gs[j]).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("physical basis enumeration") {
    ModelSpec spec;
    SUBCASE("N=2 periodic, all constraints") {
        PhysicalBasis basis = enumerate_physical_basis(spec);
        CHECK(basis.indices == std::vector<uint64_t>{0, 7, 10, 13});
        CHECK(basis.n_independent_constraints == 2);
        CHECK(basis.dimension() == 16 / (1 << basis.n_independent_constraints));

        auto ops = gauss_operators(spec);
        for (uint64_t x : basis.indices)
            for (const auto& g : ops) {
                uint64_t mask = 0;
                for (const auto& [q, p] : g.terms[0].factors) mask |= uint64_t(1) << q;
                CHECK((std::popcount(x & mask) & 1) == 0);
            }
    }
    SUBCASE("empty constraint set keeps everything") {
        PhysicalBasis basis = enumerate_physical_basis(spec, {});
        CHECK(basis.dimension() == 16);
        CHECK(basis.n_independent_constraints == 0);
    }
    SUBCASE("single constraint halves the space") {
        PhysicalBasis basis = enumerate_physical_basis(spec, {0});
        CHECK(basis.dimension() == 8);
        CHECK(basis.n_independent_constraints == 1);
    }
    SUBCASE("single site with two dangling links: four configurations") {
        ModelSpec tiny;
        tiny.n_sites = 1;
        tiny.boundary = Boundary::open_dangling;
        PhysicalBasis basis = enumerate_physical_basis(tiny);
        CHECK(basis.dimension() == 4);
    }
    SUBCASE("out-of-range constraint index rejected") {
        CHECK_THROWS_AS(enumerate_physical_basis(spec, {5}), std::invalid_argument);
    }
}

TEST_CASE("projector built from the basis is idempotent and absorbs G") {
    ModelSpec spec;
    PhysicalBasis basis = enumerate_physical_basis(spec);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(16, 16);
    for (uint64_t x : basis.indices) P(Eigen::Index(x), Eigen::Index(x)) = 1.0;
    CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-14);
    for (const auto& g : gauss_operators(spec)) {
        Eigen::MatrixXcd G = dense_matrix(g, 4);
        CHECK((P * G * P - P).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("ed_ground") {
    SUBCASE("t=0 reduces to the diagonal field term") {
        ModelSpec spec;
        spec.t = 0.0;
        GroundResult g = ed_ground(spec);
        CHECK(g.energy == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("N=2 reference value") {
        ModelSpec spec;
        GroundResult g = ed_ground(spec);
        CHECK(std::abs(g.energy - kE0N2) < 1e-9);
        CHECK(std::abs(unconstrained_ground(spec) - kE0N2Unconstrained) < 1e-9);
    }
    SUBCASE("N=3 reference value") {
        ModelSpec spec;
        spec.n_sites = 3;
        GroundResult g = ed_ground(spec);
        CHECK(std::abs(g.energy - kE0N3) < 1e-9);
    }
    SUBCASE("state is normalized, physical, and attains the energy") {
        ModelSpec spec;
        GroundResult g = ed_ground(spec);
        double norm_sq = 0.0;
        for (const auto& a : g.state.amplitudes) norm_sq += std::norm(a);
        CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& gauss : gauss_operators(spec))
            CHECK(pauli_expectation(g.state, gauss) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(pauli_expectation(g.state, build_hamiltonian(spec)) ==
              doctest::Approx(g.energy).epsilon(1e-10));
    }
    SUBCASE("constrained ground sits above the unconstrained one") {
        for (int N : {2, 3}) {
            ModelSpec spec;
            spec.n_sites = N;
            CHECK(ed_ground(spec).energy >= unconstrained_ground(spec) - 1e-12);
        }
    }
}

TEST_CASE("ed_thermal") {
    ModelSpec spec;
    SUBCASE("F = -T log Z") {
        for (double T : {0.5, 1.0, 2.0}) {
            ThermalResult th = ed_thermal(spec, T);
            CHECK(std::abs(th.free_energy - (-T * th.log_partition)) < 1e-8);
        }
    }
    SUBCASE("frozen free energies at the experiment temperatures") {
        CHECK(std::abs(ed_thermal(spec, 0.5).free_energy - kF05) < 1e-9);
        CHECK(std::abs(ed_thermal(spec, 1.0).free_energy - kF10) < 1e-9);
        CHECK(std::abs(ed_thermal(spec, 1.5).free_energy - kF15) < 1e-9);
        CHECK(std::abs(ed_thermal(spec, 2.0).free_energy - kF20) < 1e-9);
    }
    SUBCASE("T -> 0 recovers the ground energy") {
        CHECK(std::abs(ed_thermal(spec, 1e-4).free_energy - ed_ground(spec).energy) < 1e-3);
    }
    SUBCASE("t=0 closed-form diagonal partition sum") {
        ModelSpec diag = spec;
        diag.t = 0.0;
        const double T = 0.7;
        ThermalResult th = ed_thermal(diag, T);

        PhysicalBasis basis = enumerate_physical_basis(diag);
        double z = 0.0, energy_acc = 0.0;
        std::vector<double> energies;
        for (uint64_t x : basis.indices) {
            double e = 0.0;
            for (int l = 0; l < diag.n_links(); ++l)
                e += -diag.h * (((x >> diag.gauge_qubit(l)) & 1) ? -1.0 : 1.0);
            energies.push_back(e);
            z += std::exp(-e / T);
        }
        double entropy_acc = 0.0;
        for (double e : energies) {
            const double p = std::exp(-e / T) / z;
            energy_acc += p * e;
            entropy_acc -= p * std::log(p);
        }
        CHECK(std::abs(th.free_energy - (-T * std::log(z))) < 1e-8);
        CHECK(std::abs(th.energy - energy_acc) < 1e-8);
        CHECK(std::abs(th.entropy - entropy_acc) < 1e-8);
    }
    SUBCASE("entropy bounds and dF/dT = -S") {
        for (double T : {0.5, 1.0, 2.0}) {
            ThermalResult th = ed_thermal(spec, T);
            CHECK(th.entropy >= 0.0);
            CHECK(th.entropy <= std::log(double(enumerate_physical_basis(spec).dimension())) +
                                    1e-12);
            const double step = 1e-4;
            const double dfdt = (ed_thermal(spec, T + step).free_energy -
                                 ed_thermal(spec, T - step).free_energy) /
                                (2 * step);
            CHECK(std::abs(dfdt + th.entropy) < 1e-3);
        }
    }
    SUBCASE("rho is a physical-subspace Gibbs state") {
        ThermalResult th = ed_thermal(spec, 1.0);
        const Eigen::MatrixXcd& rho = th.rho.entries;
        CHECK((rho - Eigen::MatrixXcd(rho.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(rho.trace() - complexd(1.0)) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);

        PhysicalBasis basis = enumerate_physical_basis(spec);
        std::set<uint64_t> keep(basis.indices.begin(), basis.indices.end());
        for (uint64_t r = 0; r < 16; ++r)
            for (uint64_t c = 0; c < 16; ++c)
                if (!keep.count(r) || !keep.count(c))
                    CHECK(std::abs(rho(Eigen::Index(r), Eigen::Index(c))) == 0.0);
    }
    SUBCASE("T <= 0 rejected") {
        CHECK_THROWS_AS(ed_thermal(spec, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(ed_thermal(spec, -1.0), std::invalid_argument);
    }
}
