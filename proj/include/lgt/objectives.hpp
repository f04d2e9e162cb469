#pragma once

#include <vector>

#include "lgt/ansatz.hpp"
#include "lgt/lgt_model.hpp"
#include "lgt/sim_core.hpp"

namespace lgt {

struct ThetaPhi {
    std::vector<double> theta;
    std::vector<double> phi;  // latent angles, mixed-state objectives only
};

// Precompiled model + ansatz bundle shared by all objective evaluations.
struct ObjectiveContext {
    ModelSpec spec;
    AnsatzTemplate tmpl;
    CompiledSum hamiltonian;
    std::vector<CompiledSum> gauss;
    std::vector<int> param_gate;  // parameter index -> gate position in a bound circuit

    ObjectiveContext(const ModelSpec& model_spec, const AnsatzTemplate& ansatz);
};

double vqe_energy(const ObjectiveContext& ctx, const std::vector<double>& theta);

// L2 = sum_j |<G_j> - 1|.
double gauss_violation(const ObjectiveContext& ctx, const std::vector<double>& theta);

double penalty_cost(const ObjectiveContext& ctx, const std::vector<double>& theta,
                    double mu);

// Sum over qubits of the binary entropy of sin^2(phi_i), natural log, 0 log 0 := 0.
double entropy(const std::vector<double>& phi);

// dS/dphi_i = sin(2 phi_i) log(cos^2 phi_i / sin^2 phi_i), with limit 0 at the
// singular angles phi_i in {0, pi/2, ...}.
std::vector<double> entropy_gradient(const std::vector<double>& phi);

double vqt_free_energy(const ObjectiveContext& ctx, const std::vector<double>& theta,
                       const std::vector<double>& phi, double T);

double vqt_gauss_violation(const ObjectiveContext& ctx, const std::vector<double>& theta,
                           const std::vector<double>& phi);

double vqt_penalty_cost(const ObjectiveContext& ctx, const std::vector<double>& theta,
                        const std::vector<double>& phi, double T, double mu);

enum class ObjectiveKind {
    vqe_energy,
    vqe_gauss,
    vqe_penalty,
    vqt_free_energy,
    vqt_gauss,
    vqt_penalty,
};

// Exact gradient: theta components by the parameter-shift rule (+-pi/2), phi
// components analytically through the diagonal input distribution; |.| terms use
// the subgradient convention sign(0) := 0. VQT gradients are [theta..., phi...].
std::vector<double> gradient(const ObjectiveContext& ctx, ObjectiveKind kind,
                             const ThetaPhi& params, double T = 1.0, double mu = 0.0);

// Joint evaluation of (L1, L2) and both gradients, sharing the shifted circuit
// evaluations between the two objectives.
struct PairEvaluation {
    double L1 = 0.0;
    double L2 = 0.0;
    std::vector<double> grad_L1;
    std::vector<double> grad_L2;
};

PairEvaluation vqe_pair(const ObjectiveContext& ctx, const std::vector<double>& theta);

PairEvaluation vqt_pair(const ObjectiveContext& ctx, const std::vector<double>& theta,
                        const std::vector<double>& phi, double T);

}  // namespace lgt
