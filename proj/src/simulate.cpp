#include "zd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace zd {

namespace {

// Hand-rolled draws on top of mt19937_64 so trajectories are reproducible
// bit-for-bit across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

double exponential(std::mt19937_64& rng, double rate) {
    return -std::log(1.0 - uniform01(rng)) / rate;
}

long long uniform_below(std::mt19937_64& rng, long long bound) {
    return static_cast<long long>(
        (static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(bound)) >> 64);
}

}  // namespace

long long state_at(const Trajectory& traj, double t) {
    const auto it = std::upper_bound(
        traj.events.begin(), traj.events.end(), t,
        [](double value, const TrajectoryEvent& e) { return value < e.time; });
    if (it == traj.events.begin())
        throw std::invalid_argument("time precedes the trajectory start");
    return std::prev(it)->state;
}

long long AgentState::count_opinion1() const {
    long long s = 0;
    for (std::uint8_t o : opinions) s += o;
    return s;
}

AgentState initial_agent_state(const ModelParams& p) {
    AgentState st;
    st.zealot0_count = p.z0;
    st.zealot1_count = p.z1;
    st.opinions.assign(p.n, 0);
    for (long long i = p.z0; i < p.z0 + p.z1; ++i) st.opinions[i] = 1;
    // The free users holding opinion 1 at time zero occupy the first
    // n1 - z1 free slots; exchangeability makes the choice immaterial.
    for (long long i = p.z0 + p.z1; i < p.z0 + p.z1 + (p.n1 - p.z1); ++i)
        st.opinions[i] = 1;
    return st;
}

Trajectory simulate_agents(const ModelParams& p, double horizon, std::uint64_t seed,
                           AgentState* final_state) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

    AgentState st = initial_agent_state(p);
    std::mt19937_64 rng(seed);

    Trajectory traj;
    traj.seed = seed;
    traj.events.push_back({0.0, p.n1});

    long long k = p.n1;
    const long long nz = p.z0 + p.z1;
    double t = 0.0;
    if (nz < p.n && k > 0 && k < p.n) {
        const double ring_rate = static_cast<double>(p.n);
        while (true) {
            t += exponential(rng, ring_rate);
            if (t > horizon) break;
            const long long i = uniform_below(rng, p.n);
            if (st.is_zealot(i)) continue;  // ring consumes time, changes nothing
            long long j = uniform_below(rng, p.n - 1);
            if (j >= i) ++j;
            if (st.opinions[j] == st.opinions[i]) continue;
            st.opinions[i] = st.opinions[j];
            k += st.opinions[i] ? 1 : -1;
            traj.events.push_back({t, k});
            if (k == 0 || k == p.n) break;  // unanimous, nothing can change
        }
    }

    if (final_state) *final_state = std::move(st);
    return traj;
}

Trajectory simulate_aggregate(const ModelParams& p, double horizon, std::uint64_t seed) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

    const RateMatrix rm = rate_matrix(p);
    std::mt19937_64 rng(seed);

    Trajectory traj;
    traj.seed = seed;
    traj.events.push_back({0.0, p.n1});

    long long k = p.n1;
    double t = 0.0;
    while (true) {
        const double down = rm.down_at(k);
        const double up = rm.up_at(k);
        const double total = down + up;
        if (total == 0.0) break;
        t += exponential(rng, total);
        if (t > horizon) break;
        k += (uniform01(rng) * total < down) ? -1 : 1;
        traj.events.push_back({t, k});
    }
    return traj;
}

std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t counter) {
    std::uint64_t z = base_seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

EnsembleStats run_ensemble(const ModelParams& p, long long m,
                           const std::vector<double>& snapshot_times,
                           std::uint64_t base_seed, SimLevel level, int jobs) {
    if (m < 2) throw std::invalid_argument("ensemble needs at least 2 replicas");
    if (snapshot_times.empty()) throw std::invalid_argument("no snapshot times given");
    for (double t : snapshot_times)
        if (t < 0.0) throw std::invalid_argument("snapshot times must be non-negative");

    double horizon = 0.0;
    for (double t : snapshot_times) horizon = std::max(horizon, t);
    horizon = std::max(horizon, 1e-9);

    const size_t n_snaps = snapshot_times.size();
    std::vector<long long> states(static_cast<size_t>(m) * n_snaps);

    const auto worker = [&](long long r_begin, long long r_end) {
        for (long long r = r_begin; r < r_end; ++r) {
            const std::uint64_t seed = replica_seed(base_seed, static_cast<std::uint64_t>(r));
            const Trajectory traj = (level == SimLevel::agent)
                                        ? simulate_agents(p, horizon, seed)
                                        : simulate_aggregate(p, horizon, seed);
            for (size_t s = 0; s < n_snaps; ++s)
                states[static_cast<size_t>(r) * n_snaps + s] =
                    state_at(traj, snapshot_times[s]);
        }
    };

    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(m)));
    if (threads == 1) {
        worker(0, m);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (m + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const long long b = w * chunk;
            const long long e = std::min<long long>(m, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    const StateSpace space = p.space();
    EnsembleStats stats;
    stats.snapshot_times = snapshot_times;
    stats.m = m;
    stats.empirical_dists.reserve(n_snaps);
    stats.mean.resize(n_snaps);
    stats.stddev.resize(n_snaps);

    for (size_t s = 0; s < n_snaps; ++s) {
        Distribution d;
        d.space = space;
        d.probs.assign(space.size(), 0.0);
        double sum = 0.0;
        for (long long r = 0; r < m; ++r) {
            const long long k = states[static_cast<size_t>(r) * n_snaps + s];
            d.probs[space.index_of(k)] += 1.0;
            sum += static_cast<double>(k);
        }
        for (double& x : d.probs) x /= static_cast<double>(m);
        const double mu = sum / static_cast<double>(m);
        double ss = 0.0;
        for (long long r = 0; r < m; ++r) {
            const double dx = static_cast<double>(states[static_cast<size_t>(r) * n_snaps + s]) - mu;
            ss += dx * dx;
        }
        stats.empirical_dists.push_back(std::move(d));
        stats.mean[s] = mu;
        stats.stddev[s] = std::sqrt(ss / static_cast<double>(m - 1));
    }
    return stats;
}

std::vector<std::pair<double, double>> confidence_interval(const EnsembleStats& stats,
                                                           double phi) {
    if (stats.m < 2) throw std::invalid_argument("confidence interval needs m >= 2");
    if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
    std::vector<std::pair<double, double>> out;
    out.reserve(stats.mean.size());
    const double root_m = std::sqrt(static_cast<double>(stats.m));
    for (size_t s = 0; s < stats.mean.size(); ++s) {
        const double half = phi * stats.stddev[s] / root_m;
        out.emplace_back(stats.mean[s] - half, stats.mean[s] + half);
    }
    return out;
}

}  // namespace zd
