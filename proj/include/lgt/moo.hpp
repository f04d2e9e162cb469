#pragma once

#include <vector>

namespace lgt {

struct WeightVector {
    std::vector<double> alphas;  // simplex weights, one per task
};

// Closed-form minimizer of ||a*g1 + (1-a)*g2||^2 over a in [0, 1].
// Returns 0.5 when the gradients coincide (any weight is optimal).
double solve_alpha_two_task(const std::vector<double>& g1, const std::vector<double>& g2);

// Frank-Wolfe on the simplex for the minimum-norm convex combination of T gradients.
WeightVector frank_wolfe_weights(const std::vector<std::vector<double>>& gradients,
                                 int max_iters = 200, double tol = 1e-14);

// Euclidean norm of the alpha-weighted gradient combination.
double kkt_residual(const std::vector<std::vector<double>>& gradients,
                    const WeightVector& alpha);

// params - eta * sum_t alpha_t * g_t.
std::vector<double> descent_step(const std::vector<double>& params,
                                 const std::vector<std::vector<double>>& gradients,
                                 const WeightVector& alpha, double eta);

}  // namespace lgt
