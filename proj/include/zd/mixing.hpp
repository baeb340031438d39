#pragma once

#include "zd/distribution.hpp"
#include "zd/model.hpp"

namespace zd {

/// Total variation distance, half the L1 distance between the two
/// probability vectors. Throws std::invalid_argument when the state
/// spaces differ.
double total_variation(const Distribution& mu, const Distribution& nu);

struct MixingResult {
    double t_mix = 0.0;
    double eps = 0.0;
    double t_low = 0.0;        // final bracket, TV(t_low) >= eps
    double t_high = 0.0;       // final bracket, TV(t_high) < eps
    long long evaluations = 0; // number of TV evaluations spent
};

/// Horizon after which the search gives up: 1e4 * (n-1) / (z0+z1).
double default_mixing_horizon(const ModelParams& p);

/// First time, resolved to t_resolution, at which the transient
/// distribution is within eps of the stationary one in total variation.
/// Search: geometric doubling from t = 1 to bracket a crossing, bisection
/// down to t_resolution, then a forward scan at t_resolution granularity
/// over the doubling bracket to catch non-monotone re-crossings. Throws
/// std::runtime_error when TV never drops below eps before t_max.
MixingResult mixing_time(const ModelParams& p, double eps = 1e-2,
                         double t_resolution = 0.05);
MixingResult mixing_time(const ModelParams& p, double eps, double t_resolution,
                         double t_max);

}  // namespace zd
