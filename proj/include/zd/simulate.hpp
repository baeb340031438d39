#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zd/distribution.hpp"
#include "zd/model.hpp"

namespace zd {

struct TrajectoryEvent {
    double time = 0.0;
    long long state = 0;
};

/// One sample path of the opinion-1 count, recorded as state-change events.
/// The first event is always (0, n1); consecutive states differ by one.
struct Trajectory {
    std::vector<TrajectoryEvent> events;
    std::uint64_t seed = 0;
};

/// State at time t under cadlag sampling: the state after the last event
/// with time <= t.
long long state_at(const Trajectory& traj, double t);

/// Full opinion vector. Zealots sit at fixed index ranges: [0, z0) hold 0,
/// [z0, z0+z1) hold 1, the rest are free to change.
struct AgentState {
    std::vector<std::uint8_t> opinions;
    long long zealot0_count = 0;
    long long zealot1_count = 0;

    bool is_zealot(long long i) const { return i < zealot0_count + zealot1_count; }
    long long count_opinion1() const;
};

AgentState initial_agent_state(const ModelParams& p);

/// Agent-level simulation. Global rings form a Poisson process of rate n;
/// at each ring a uniformly chosen user, if not a zealot, copies the
/// opinion of a uniformly chosen other user. Stops at the horizon or on
/// absorption. Identical (params, seed) give identical trajectories.
/// When final_state is non-null it receives the terminal opinion vector.
Trajectory simulate_agents(const ModelParams& p, double horizon, std::uint64_t seed,
                           AgentState* final_state = nullptr);

/// Aggregate-level (Gillespie) simulation of the birth-death chain:
/// exponential holding time with rate down(k)+up(k), then a jump of +-1
/// with probabilities proportional to the two rates. Marginally equivalent
/// to simulate_agents in the opinion-1 count.
Trajectory simulate_aggregate(const ModelParams& p, double horizon, std::uint64_t seed);

enum class SimLevel { agent, aggregate };

/// Per-snapshot statistics over m independent replicas.
struct EnsembleStats {
    std::vector<double> snapshot_times;
    std::vector<Distribution> empirical_dists;
    std::vector<double> mean;
    std::vector<double> stddev;  // unbiased
    long long m = 0;
};

/// Deterministic per-replica seed, derived from the base seed by counter
/// (splitmix64 step), so ensembles parallelize without shared RNG state.
std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t counter);

/// m independent replicas sampled at the given times. Requires m >= 2 and
/// non-negative snapshot times. Replicas run on up to `jobs` threads; the
/// output is identical for any jobs value.
EnsembleStats run_ensemble(const ModelParams& p, long long m,
                           const std::vector<double>& snapshot_times,
                           std::uint64_t base_seed, SimLevel level = SimLevel::agent,
                           int jobs = 1);

/// Per-snapshot interval mean +- phi * stddev / sqrt(m).
std::vector<std::pair<double, double>> confidence_interval(const EnsembleStats& stats,
                                                           double phi = 1.96);

}  // namespace zd
