#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "zd/equilibrium.hpp"
#include "zd/mixing.hpp"
#include "zd/transient.hpp"

using namespace zd;

namespace {

// Subset-maximization form of total variation, brute force over all 2^|S|
// events. Only viable for |S| <= ~20; this is the independent oracle for
// the half-L1 formula.
double tv_subset_bruteforce(const Distribution& mu, const Distribution& nu) {
    const size_t m = mu.probs.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double diff = 0.0;
        for (size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) diff += mu.probs[i] - nu.probs[i];
        best = std::max(best, std::abs(diff));
    }
    return best;
}

// Random probability vector with all entries integer multiples of 2^-12,
// so every subset sum is exact in double and oracle equality is bit-exact.
Distribution random_dyadic(StateSpace space, std::mt19937_64& rng) {
    const long long m = space.size();
    const int kGrain = 1 << 12;
    std::vector<int> cuts;
    for (long long i = 0; i + 1 < m; ++i)
        cuts.push_back(static_cast<int>(rng() % (kGrain + 1)));
    cuts.push_back(0);
    cuts.push_back(kGrain);
    std::sort(cuts.begin(), cuts.end());
    Distribution d;
    d.space = space;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        d.probs.push_back(static_cast<double>(cuts[i + 1] - cuts[i]) / kGrain);
    return d;
}

}  // namespace

TEST_CASE("total variation on hand-evaluated pairs") {
    const StateSpace s{0, 1};
    const Distribution a{s, {0.5, 0.5}};
    const Distribution b{s, {0.9, 0.1}};
    CHECK(total_variation(a, a) == 0.0);
    CHECK(total_variation(a, b) == doctest::Approx(0.4).epsilon(1e-15));

    const StateSpace wide{0, 5};
    CHECK(total_variation(point_mass(wide, 0), point_mass(wide, 5)) == 1.0);

    const Distribution other{StateSpace{1, 2}, {0.5, 0.5}};
    CHECK_THROWS_AS(total_variation(a, other), std::invalid_argument);
}

TEST_CASE("total variation is a metric on sampled triples") {
    std::mt19937_64 rng(7);
    const StateSpace space{0, 9};
    for (int rep = 0; rep < 50; ++rep) {
        const Distribution x = random_dyadic(space, rng);
        const Distribution y = random_dyadic(space, rng);
        const Distribution z = random_dyadic(space, rng);
        CHECK(total_variation(x, y) == total_variation(y, x));
        CHECK(total_variation(x, x) == 0.0);
        CHECK(total_variation(x, z) <= total_variation(x, y) + total_variation(y, z) + 1e-15);
        CHECK(total_variation(x, y) >= 0.0);
        CHECK(total_variation(x, y) <= 1.0);
    }
}

TEST_CASE("half-L1 equals the subset maximization exactly on dyadic vectors") {
    std::mt19937_64 rng(11);
    for (long long sz : {2, 5, 12}) {
        const StateSpace space{0, sz - 1};
        for (int rep = 0; rep < 20; ++rep) {
            const Distribution mu = random_dyadic(space, rng);
            const Distribution nu = random_dyadic(space, rng);
            CHECK(total_variation(mu, nu) == tv_subset_bruteforce(mu, nu));
        }
    }
}

TEST_CASE("half-L1 matches the subset maximization on real transient rows") {
    const ModelParams p = new_model(13, 1, 1, 6);  // |S| = 12
    const Distribution mu = transient_distribution(p, 1.0);
    const Distribution nu = stationary_distribution(p);
    CHECK(std::abs(total_variation(mu, nu) - tv_subset_bruteforce(mu, nu)) <= 1e-14);
}

TEST_CASE("mixing time invariants on a small instance") {
    const ModelParams p = new_model(10, 2, 1, 8);
    const MixingResult r = mixing_time(p, 1e-2, 0.05);
    const Distribution pi = stationary_distribution(p);

    CHECK(r.t_mix == r.t_high);
    CHECK(r.t_low <= r.t_mix);
    CHECK(r.t_high - r.t_low <= 0.05 + 1e-12);
    CHECK(total_variation(transient_distribution(p, r.t_high), pi) < 1e-2);
    CHECK(total_variation(transient_distribution(p, r.t_low), pi) >= 1e-2);
    // reported time still qualifies one resolution step later
    CHECK(total_variation(transient_distribution(p, r.t_mix + 0.05), pi) < 1e-2);
    CHECK(r.evaluations > 0);
}

TEST_CASE("mixing time is non-increasing in eps") {
    const ModelParams p = new_model(30, 4, 3, 25);
    const double t_strict = mixing_time(p, 1e-3, 0.05).t_mix;
    const double t_mid = mixing_time(p, 1e-2, 0.05).t_mix;
    const double t_loose = mixing_time(p, 0.3, 0.05).t_mix;
    CHECK(t_strict >= t_mid);
    CHECK(t_mid >= t_loose);
}

TEST_CASE("already-mixed start yields zero mixing time") {
    // from the uniform two-state law, TV(delta_1, pi) = 0.5 < 0.6
    const ModelParams p = new_model(3, 1, 1, 1);
    const MixingResult r = mixing_time(p, 0.6, 0.05);
    CHECK(r.t_mix == 0.0);
}

TEST_CASE("unreachable precision reports failure") {
    const ModelParams p = new_model(10, 2, 1, 8);
    CHECK_THROWS_AS(mixing_time(p, 1e-9, 0.05, 2.0), std::runtime_error);
}

TEST_CASE("argument validation") {
    const ModelParams p = new_model(10, 2, 1, 8);
    CHECK_THROWS_AS(mixing_time(p, 0.0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(mixing_time(p, 1.5, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(mixing_time(p, 1e-2, 0.0), std::invalid_argument);
}
