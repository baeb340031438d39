#pragma once

#include <cstdint>
#include <vector>

namespace zd {

/// Inclusive range {z1, ..., n - z0} of reachable opinion-1 counts.
struct StateSpace {
    long long lo = 0;
    long long hi = 0;

    long long size() const { return hi - lo + 1; }
    bool contains(long long k) const { return k >= lo && k <= hi; }
    long long index_of(long long k) const { return k - lo; }
    long long state_of(long long i) const { return lo + i; }

    friend bool operator==(const StateSpace&, const StateSpace&) = default;
};

/// One instance of the process: n users in a complete graph, z0 zealots
/// pinned to opinion 0, z1 pinned to opinion 1, and n1 opinion-1 holders
/// at time zero (1-zealots included). Immutable once built by new_model().
struct ModelParams {
    long long n = 0;
    long long z0 = 0;
    long long z1 = 0;
    long long n1 = 0;

    StateSpace space() const { return StateSpace{z1, n - z0}; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Outgoing rates at a state k: down = rate of k -> k-1, up = rate of
/// k -> k+1, stay = -(down + up) so the three always sum to zero.
struct Rates {
    double down = 0.0;
    double stay = 0.0;
    double up = 0.0;
};

/// Tridiagonal generator over the state space, stored as three diagonals.
/// down[0] and up[size-1] are zero by construction; diag is built by
/// negating the other two so row sums are exactly zero.
struct RateMatrix {
    StateSpace space;
    std::vector<double> down;
    std::vector<double> up;
    std::vector<double> diag;

    double down_at(long long k) const { return down[space.index_of(k)]; }
    double up_at(long long k) const { return up[space.index_of(k)]; }
    double diag_at(long long k) const { return diag[space.index_of(k)]; }
};

/// Validates and builds the parameter tuple. Throws std::invalid_argument
/// when n < 2, z0 + z1 = 0, z0 + z1 > n, or n1 lies outside {z1, ..., n-z0}.
ModelParams new_model(long long n, long long z0, long long z1, long long n1);

/// Rates out of state k. Throws std::out_of_range when k is not in the
/// state space.
Rates transition_rates(const ModelParams& p, long long k);

/// The full generator as three diagonals.
RateMatrix rate_matrix(const ModelParams& p);

}  // namespace zd
