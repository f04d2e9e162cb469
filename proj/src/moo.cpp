#include "lgt/moo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgt {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void check_same_length(const std::vector<std::vector<double>>& gradients) {
    for (const auto& g : gradients)
        if (g.size() != gradients.front().size())
            throw std::invalid_argument("gradient vectors must share one length");
}

}  // namespace

double solve_alpha_two_task(const std::vector<double>& g1, const std::vector<double>& g2) {
    if (g1.size() != g2.size())
        throw std::invalid_argument("gradient vectors must share one length");
    double diff_sq = 0.0, num = 0.0;
    for (size_t i = 0; i < g1.size(); ++i) {
        const double d = g1[i] - g2[i];
        diff_sq += d * d;
        num += -d * g2[i];  // (g2 - g1) . g2
    }
    if (diff_sq < 1e-18) return 0.5;
    return std::clamp(num / diff_sq, 0.0, 1.0);
}

WeightVector frank_wolfe_weights(const std::vector<std::vector<double>>& gradients,
                                 int max_iters, double tol) {
    const int T = int(gradients.size());
    if (T < 2) throw std::invalid_argument("frank_wolfe_weights needs at least 2 gradients");
    check_same_length(gradients);

    // Gram matrix M_ts = g_t . g_s; objective f(a) = a^T M a.
    std::vector<std::vector<double>> M(static_cast<size_t>(T),
                                       std::vector<double>(static_cast<size_t>(T)));
    for (int t = 0; t < T; ++t)
        for (int s = t; s < T; ++s)
            M[size_t(t)][size_t(s)] = M[size_t(s)][size_t(t)] =
                dot(gradients[size_t(t)], gradients[size_t(s)]);

    std::vector<double> alpha(size_t(T), 1.0 / T);
    auto mat_vec = [&](const std::vector<double>& v) {
        std::vector<double> out(size_t(T), 0.0);
        for (int t = 0; t < T; ++t)
            for (int s = 0; s < T; ++s) out[size_t(t)] += M[size_t(t)][size_t(s)] * v[size_t(s)];
        return out;
    };

    std::vector<double> Ma = mat_vec(alpha);
    double objective = dot(alpha, Ma);
    for (int iter = 0; iter < max_iters; ++iter) {
        const int best =
            int(std::min_element(Ma.begin(), Ma.end()) - Ma.begin());
        // direction d = e_best - alpha; exact line search on the quadratic
        std::vector<double> d(static_cast<size_t>(T));
        for (int t = 0; t < T; ++t) d[size_t(t)] = (t == best ? 1.0 : 0.0) - alpha[size_t(t)];
        const std::vector<double> Md = mat_vec(d);
        const double dMd = dot(d, Md);
        const double dMa = dot(d, Ma);
        double gamma;
        if (dMd <= 0.0)
            gamma = dMa < 0.0 ? 1.0 : 0.0;
        else
            gamma = std::clamp(-dMa / dMd, 0.0, 1.0);
        if (gamma == 0.0) break;
        for (int t = 0; t < T; ++t) alpha[size_t(t)] += gamma * d[size_t(t)];
        Ma = mat_vec(alpha);
        const double next = dot(alpha, Ma);
        if (objective - next < tol) {
            objective = next;
            break;
        }
        objective = next;
    }
    return WeightVector{alpha};
}

double kkt_residual(const std::vector<std::vector<double>>& gradients,
                    const WeightVector& alpha) {
    if (gradients.size() != alpha.alphas.size())
        throw std::invalid_argument("one weight per gradient required");
    check_same_length(gradients);
    const size_t dim = gradients.front().size();
    double norm_sq = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        double c = 0.0;
        for (size_t t = 0; t < gradients.size(); ++t)
            c += alpha.alphas[t] * gradients[t][i];
        norm_sq += c * c;
    }
    return std::sqrt(norm_sq);
}

std::vector<double> descent_step(const std::vector<double>& params,
                                 const std::vector<std::vector<double>>& gradients,
                                 const WeightVector& alpha, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
    if (gradients.size() != alpha.alphas.size())
        throw std::invalid_argument("one weight per gradient required");
    for (const auto& g : gradients)
        if (g.size() != params.size())
            throw std::invalid_argument("gradient length does not match parameters");
    std::vector<double> out = params;
    for (size_t t = 0; t < gradients.size(); ++t)
        for (size_t i = 0; i < params.size(); ++i)
            out[i] -= eta * alpha.alphas[t] * gradients[t][i];
    return out;
}

}  // namespace lgt
