#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zd/equilibrium.hpp"
#include "zd/planner.hpp"

using namespace zd;

TEST_CASE("equilibrium opinion") {
    CHECK(equilibrium_opinion(10, 0, 0.0) == 0.0);
    CHECK(equilibrium_opinion(10, 10, 0.0) == 0.5);
    // backfire: 20 / ((1 + 0.05*20)*10 + 20) = 20/40
    CHECK(equilibrium_opinion(10, 20, 0.05) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(equilibrium_opinion(0, 0, 0.0), std::invalid_argument);
}

TEST_CASE("optimal injection without backfire") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.5;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.z1_star_real == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(out.z1_star.value() == 10);
    CHECK(out.feasible_exact);
    CHECK(!out.capped);
    CHECK(!out.unbounded);
    CHECK(out.achieved_lambda == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("optimal injection with backfire, exact case") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.5;
    req.alpha = 0.05;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.discriminant == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(out.z1_star_real == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(out.z1_star.value() == 20);
    CHECK(out.feasible_exact);
    CHECK(out.achieved_lambda == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("D <= 0 spends the budget and flags infeasibility") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.5;
    req.alpha = 0.11;
    req.z_max = 50.0;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.discriminant == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK(!out.feasible_exact);
    CHECK(out.capped);
    CHECK(out.z1_star.value() == 50);

    req.alpha = 0.2;
    req.z_max = 40.0;
    const PlanOutcome out2 = optimal_injection(req);
    CHECK(out2.discriminant == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(out2.z1_star.value() == 40);
    CHECK(!out2.feasible_exact);
}

TEST_CASE("D <= 0 without budget is reported unbounded") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.5;
    req.alpha = 0.2;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.unbounded);
    CHECK(!out.z1_star.has_value());
    CHECK(std::isinf(out.z1_star_real));
    // supremum of the reachable opinion: 1/(1 + alpha*z0) = 1/3
    CHECK(out.achieved_lambda == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(out.achieved_lambda < req.lambda);
}

TEST_CASE("budget cap with D > 0") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.8;  // wants 40 zealots
    req.z_max = 12.0;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.z1_star_real == doctest::Approx(40.0).epsilon(1e-14));
    CHECK(out.capped);
    CHECK(!out.feasible_exact);
    CHECK(out.z1_star.value() == 12);
}

TEST_CASE("alpha = 0 reduces the backfire optimum to the plain ratio") {
    for (long long z0 : {1, 7, 10, 64}) {
        for (double lambda : {0.1, 0.25, 0.5, 0.9}) {
            PlanRequest req;
            req.z0 = z0;
            req.lambda = lambda;
            const PlanOutcome out = optimal_injection(req);
            CHECK(out.z1_star_real == lambda * static_cast<double>(z0) / (1.0 - lambda));
        }
    }
}

TEST_CASE("exactness of the unrounded optimum under backfire") {
    for (double alpha : {0.0, 0.01, 0.04}) {
        for (double lambda : {0.2, 0.5, 0.7}) {
            const double z0 = 10.0;
            const double d = 1.0 - lambda - alpha * lambda * z0;
            if (d <= 0.0) continue;
            const double z1 = lambda * z0 / d;
            CHECK(std::abs(equilibrium_opinion(z0, z1, alpha) - lambda) <= 1e-12);
        }
    }
}

TEST_CASE("squared gap decreases monotonically when D <= 0") {
    const double z0 = 10.0, lambda = 0.5, alpha = 0.2;
    double prev = 1e300;
    for (double z1 = 1.0; z1 <= 4000.0; z1 *= 1.7) {
        const double gap = equilibrium_opinion(z0, z1, alpha) - lambda;
        const double sq = gap * gap;
        CHECK(sq > 0.0);
        CHECK(sq < prev);
        prev = sq;
    }
}

TEST_CASE("planner agrees with the equilibrium module at alpha = 0") {
    PlanRequest req;
    req.z0 = 10;
    req.lambda = 0.5;
    const PlanOutcome out = optimal_injection(req);
    const ModelParams p = new_model(100, 10, out.z1_star.value(), out.z1_star.value());
    CHECK(equilibrium_expectation(p) / 100.0 ==
          doctest::Approx(out.achieved_lambda).epsilon(1e-12));
}

TEST_CASE("conversion feasibility") {
    CHECK(conversion_feasible(100, 10, 0.5));
    CHECK(!conversion_feasible(100, 60, 0.5));
    CHECK(conversion_feasible(100, 50, 0.5));   // boundary 0.5 + 0.5 <= 1
    CHECK(!conversion_feasible(100, 1, 0.995)); // lambda -> 1 kills conversion
    // backfire variant: z0 + z1*(alpha) must fit inside n
    CHECK(conversion_feasible(100, 10, 0.5, 0.05));   // z1* = 20, 30 <= 100
    CHECK(!conversion_feasible(100, 10, 0.5, 0.11));  // D < 0
}

TEST_CASE("largest workable backfire rate for conversion") {
    CHECK(!max_alpha_for_conversion(100, 39, 0.5).has_value());
    const auto a38 = max_alpha_for_conversion(100, 38, 0.5);
    REQUIRE(a38.has_value());
    CHECK(*a38 > 0.01);

    const auto a10 = max_alpha_for_conversion(100, 10, 0.5);
    REQUIRE(a10.has_value());
    // at the returned alpha the conversion constraint is tight: z0 + z1* = n
    const double d = 1.0 - 0.5 - *a10 * 0.5 * 10.0;
    CHECK(std::abs(10.0 + 0.5 * 10.0 / d - 100.0) <= 1e-9);

    CHECK(!max_alpha_for_conversion(100, 100, 0.5).has_value());
}

TEST_CASE("rounding picks the closer equilibrium opinion") {
    CHECK(round_zealots(10.0, 10, 0.5) == 10);
    // 10/20 = 0.5 exactly beats 11/21; the tie rule also prefers the floor
    CHECK(round_zealots(10.5, 10, 0.5) == 10);
    // 6 -> 0.375 (off by 0.025), 7 -> 0.4118 (off by 0.0118)
    CHECK(round_zealots(6.9, 10, 0.4) == 7);
    CHECK_THROWS_AS(round_zealots(-1.0, 10, 0.5), std::invalid_argument);
}

TEST_CASE("feasibility frontier matches alpha < (1-lambda)/(lambda*z0)") {
    const double lambda = 0.5;
    for (long long z0 = 1; z0 <= 100; z0 += 9) {
        for (double alpha : {0.01, 0.02, 0.05, 0.1, 0.3, 1.0}) {
            PlanRequest req;
            req.z0 = z0;
            req.lambda = lambda;
            req.alpha = alpha;
            const bool feasible = optimal_injection(req).discriminant > 0.0;
            const bool frontier = alpha < (1.0 - lambda) / (lambda * static_cast<double>(z0));
            CHECK(feasible == frontier);
        }
    }
}

TEST_CASE("convert mode caps the injection at n - z0") {
    PlanRequest req;
    req.n = 100;
    req.z0 = 40;
    req.lambda = 0.5;
    req.mode = PlanMode::convert;
    const PlanOutcome out = optimal_injection(req);
    CHECK(out.z1_star_real == doctest::Approx(40.0));
    CHECK(out.z1_star.value() == 40);  // fits: 40 + 40 <= 100
    CHECK(out.feasible_exact);

    req.z0 = 60;  // wants 60 but only 40 seats remain
    const PlanOutcome capped = optimal_injection(req);
    CHECK(capped.capped);
    CHECK(capped.z1_star.value() == 40);
    CHECK(!capped.feasible_exact);
}

TEST_CASE("request validation") {
    PlanRequest req;
    req.z0 = 0;
    CHECK_THROWS_AS(optimal_injection(req), std::invalid_argument);
    req.z0 = 10;
    req.lambda = 1.0;
    CHECK_THROWS_AS(optimal_injection(req), std::invalid_argument);
    req.lambda = 0.5;
    req.alpha = 1.5;
    CHECK_THROWS_AS(optimal_injection(req), std::invalid_argument);
}
