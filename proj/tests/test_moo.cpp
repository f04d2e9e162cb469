#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lgt/moo.hpp"

using namespace lgt;

namespace {

double combined_norm_sq(const std::vector<double>& g1, const std::vector<double>& g2,
                        double a) {
    double acc = 0.0;
    for (size_t i = 0; i < g1.size(); ++i) {
        const double c = a * g1[i] + (1.0 - a) * g2[i];
        acc += c * c;
    }
    return acc;
}

double norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("solve_alpha_two_task closed form") {
    CHECK(solve_alpha_two_task({1, 0}, {0, 1}) == doctest::Approx(0.5).epsilon(1e-12));

    SUBCASE("opposing gradients give a stationary combination") {
        const double a = solve_alpha_two_task({2, 0}, {-1, 0});
        CHECK(a == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(combined_norm_sq({2, 0}, {-1, 0}, a) < 1e-24);
    }
    SUBCASE("collinear same-direction gradients clip to the shorter one") {
        CHECK(solve_alpha_two_task({1, 1}, {3, 3}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identical gradients return 0.5") {
        CHECK(solve_alpha_two_task({0.3, -0.7}, {0.3, -0.7}) == 0.5);
    }
    SUBCASE("length mismatch rejected") {
        CHECK_THROWS_AS(solve_alpha_two_task({1, 0}, {1}), std::invalid_argument);
    }
}

TEST_CASE("solve_alpha beats a dense grid search on random pairs") {
    std::mt19937_64 rng(101);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dim_dist(1, 50);
    for (int rep = 0; rep < 100; ++rep) {
        const int dim = dim_dist(rng);
        std::vector<double> g1(static_cast<size_t>(dim)), g2(static_cast<size_t>(dim));
        for (auto& v : g1) v = gauss(rng);
        for (auto& v : g2) v = gauss(rng);

        const double a_star = solve_alpha_two_task(g1, g2);
        CHECK(a_star >= 0.0);
        CHECK(a_star <= 1.0);

        double best = 1e300;
        for (int k = 0; k < 10000; ++k) {
            const double a = double(k) / 9999.0;
            best = std::min(best, combined_norm_sq(g1, g2, a));
        }
        CHECK(combined_norm_sq(g1, g2, a_star) <= best + 1e-9);

        // min-norm hull point is no longer than either endpoint
        const double cn = std::sqrt(combined_norm_sq(g1, g2, a_star));
        CHECK(cn <= std::min(norm(g1), norm(g2)) + 1e-12);
    }
}

TEST_CASE("frank_wolfe_weights") {
    std::mt19937_64 rng(202);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SUBCASE("two tasks match the closed form") {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> g1(6), g2(6);
            for (auto& v : g1) v = gauss(rng);
            for (auto& v : g2) v = gauss(rng);
            WeightVector w = frank_wolfe_weights({g1, g2});
            const double a_star = solve_alpha_two_task(g1, g2);
            CHECK(std::abs(w.alphas[0] - a_star) < 1e-6);
            CHECK(std::abs(w.alphas[0] + w.alphas[1] - 1.0) < 1e-12);
        }
    }
    SUBCASE("a zero gradient absorbs all weight") {
        std::vector<double> g1 = {1.0, 0.5}, g2 = {0.2, 2.0}, g3 = {0.0, 0.0};
        WeightVector w = frank_wolfe_weights({g1, g2, g3});
        CHECK(w.alphas[2] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(kkt_residual({g1, g2, g3}, w) < 1e-9);
    }
    SUBCASE("simplex membership and vertex optimality for three tasks") {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::vector<double>> gs(3, std::vector<double>(8));
            for (auto& g : gs)
                for (auto& v : g) v = gauss(rng);
            WeightVector w = frank_wolfe_weights(gs);
            double sum = 0.0;
            for (double a : w.alphas) {
                CHECK(a >= -1e-12);
                sum += a;
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);

            const double res = kkt_residual(gs, w);
            for (size_t t = 0; t < 3; ++t) {
                WeightVector vertex{{0.0, 0.0, 0.0}};
                vertex.alphas[t] = 1.0;
                CHECK(res <= kkt_residual(gs, vertex) + 1e-9);
            }
            WeightVector uniform{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
            CHECK(res <= kkt_residual(gs, uniform) + 1e-9);
        }
    }
    SUBCASE("rejects fewer than two gradients") {
        CHECK_THROWS_AS(frank_wolfe_weights({{1.0, 2.0}}), std::invalid_argument);
    }
}

TEST_CASE("kkt_residual") {
    SUBCASE("balanced opposing gradients cancel") {
        CHECK(kkt_residual({{1, 0}, {-1, 0}}, WeightVector{{0.5, 0.5}}) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("all weight on one task gives its norm") {
        CHECK(kkt_residual({{3, 4}, {1, 1}}, WeightVector{{1.0, 0.0}}) ==
              doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("size mismatch rejected") {
        CHECK_THROWS_AS(kkt_residual({{1, 0}}, WeightVector{{0.5, 0.5}}),
                        std::invalid_argument);
    }
}

TEST_CASE("descent_step") {
    SUBCASE("zero combined gradient leaves parameters unchanged") {
        std::vector<double> p = {0.1, -0.2};
        auto out = descent_step(p, {{1, 1}, {-1, -1}}, WeightVector{{0.5, 0.5}}, 0.02);
        CHECK(out == p);
    }
    SUBCASE("moves against the combined gradient") {
        std::vector<double> p = {0.0, 0.0, 0.0};
        auto out = descent_step(p, {{1, -1, 0}}, WeightVector{{1.0}}, 0.02);
        CHECK(out[0] == doctest::Approx(-0.02).epsilon(1e-15));
        CHECK(out[1] == doctest::Approx(0.02).epsilon(1e-15));
        CHECK(out[2] == 0.0);
    }
    SUBCASE("two constant-gradient steps compose") {
        std::vector<double> p = {1.0};
        auto once = descent_step(p, {{2.0}}, WeightVector{{1.0}}, 0.1);
        auto twice = descent_step(once, {{2.0}}, WeightVector{{1.0}}, 0.1);
        CHECK(twice[0] == doctest::Approx(1.0 - 2 * 0.1 * 2.0).epsilon(1e-15));
    }
    SUBCASE("invalid eta rejected") {
        CHECK_THROWS_AS(descent_step({1.0}, {{1.0}}, WeightVector{{1.0}}, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(descent_step({1.0}, {{1.0}}, WeightVector{{1.0}}, -0.1),
                        std::invalid_argument);
    }
}
