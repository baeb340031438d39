#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zd/equilibrium.hpp"
#include "zd/mixing.hpp"

using namespace zd;

TEST_CASE("two-state instance: detailed balance gives the uniform law") {
    const ModelParams p = new_model(3, 1, 1, 1);
    const Distribution prod = stationary_distribution(p);
    CHECK(prod.prob_at(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(prod.prob_at(2) == doctest::Approx(0.5).epsilon(1e-14));
    const Distribution null = nullspace_oracle(p);
    CHECK(null.prob_at(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("one-sided zealotry collapses to consensus point masses") {
    const Distribution d0 = stationary_distribution(new_model(50, 5, 0, 10));
    CHECK(d0.prob_at(0) == 1.0);
    const Distribution d1 = stationary_distribution(new_model(50, 0, 5, 10));
    CHECK(d1.prob_at(50) == 1.0);
    // the null-space route reaches the same conclusion
    CHECK(nullspace_oracle(new_model(50, 5, 0, 10)).prob_at(0) == 1.0);
    CHECK(nullspace_oracle(new_model(50, 0, 5, 10)).prob_at(50) == 1.0);
}

TEST_CASE("single-state chain") {
    const Distribution d = nullspace_oracle(new_model(2, 1, 1, 1));
    CHECK(d.probs.size() == 1);
    CHECK(d.prob_at(1) == 1.0);
}

TEST_CASE("product form and null-space solve agree in total variation") {
    const long long grid[][3] = {{100, 10, 5}, {100, 20, 25}, {100, 3, 90},
                                 {250, 30, 2}, {500, 200, 1}, {512, 5, 5}};
    for (const auto& g : grid) {
        const ModelParams p = new_model(g[0], g[1], g[2], g[2]);
        const Distribution prod = stationary_distribution(p);
        const Distribution null = nullspace_oracle(p);
        CHECK(total_variation(prod, null) <= 1e-10);
    }
}

TEST_CASE("detailed balance holds to relative 1e-12") {
    const long long grid[][3] = {{100, 10, 5}, {100, 20, 25}, {37, 6, 11}, {500, 200, 1}};
    for (const auto& g : grid) {
        const ModelParams p = new_model(g[0], g[1], g[2], g[2]);
        const Distribution pi = stationary_distribution(p);
        const RateMatrix rm = rate_matrix(p);
        for (long long i = 0; i + 1 < rm.space.size(); ++i) {
            const double lhs = pi.probs[i] * rm.up[i];
            const double rhs = pi.probs[i + 1] * rm.down[i + 1];
            const double scale = std::max(lhs, rhs);
            if (scale > 0.0) CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("stationary mean equals n*z1/(z0+z1)") {
    // includes degenerate one-sided cases, where the mean sits at the boundary
    for (long long n : {2, 5, 10, 50, 100, 300, 1000}) {
        for (long long z0 : {0, 1, 5, 20}) {
            for (long long z1 : {0, 1, 5, 40}) {
                if (z0 + z1 < 1 || z0 + z1 > n) continue;
                const ModelParams p = new_model(n, z0, z1, z1);
                CHECK(std::abs(mean(stationary_distribution(p)) -
                               equilibrium_expectation(p)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("stationary distribution ignores n1") {
    const ModelParams a = new_model(60, 7, 4, 4);
    const ModelParams b = new_model(60, 7, 4, 53);
    const Distribution da = stationary_distribution(a);
    const Distribution db = stationary_distribution(b);
    REQUIRE(da.probs.size() == db.probs.size());
    for (size_t i = 0; i < da.probs.size(); ++i) CHECK(da.probs[i] == db.probs[i]);
}

TEST_CASE("equilibrium expectation reference values") {
    CHECK(equilibrium_expectation(new_model(100, 10, 5, 25)) ==
          doctest::Approx(33.333333333333).epsilon(1e-12));
    CHECK(equilibrium_expectation(new_model(100, 20, 25, 75)) ==
          doctest::Approx(55.555555555556).epsilon(1e-12));
    // twice the zealots, twice the partisans
    CHECK(equilibrium_expectation(new_model(100, 10, 20, 20)) ==
          doctest::Approx(66.666666666667).epsilon(1e-12));
}

TEST_CASE("heavily skewed chain stays normalized in log space") {
    const ModelParams p = new_model(2000, 900, 1, 1);
    const Distribution pi = stationary_distribution(p);
    double sum = 0.0;
    for (double x : pi.probs) {
        CHECK(std::isfinite(x));
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mean(pi) - equilibrium_expectation(p)) <= 1e-9);
}

TEST_CASE("null-space solve refuses oversized spaces") {
    CHECK_THROWS_AS(nullspace_oracle(new_model(20000, 100, 100, 100)), std::domain_error);
}

TEST_CASE("a state space of 1e5 states stays feasible") {
    const ModelParams p = new_model(100000, 100, 50, 50);
    const RateMatrix rm = rate_matrix(p);
    CHECK(rm.space.size() == 99851);
    const Distribution pi = stationary_distribution(p);
    double sum = 0.0;
    for (double x : pi.probs) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mean(pi) - equilibrium_expectation(p)) <= 1e-8);
}
