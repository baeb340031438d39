#pragma once

#include <vector>

#include "zd/model.hpp"

namespace zd {

/// Probability vector over a state space, indexed by k - lo.
struct Distribution {
    StateSpace space;
    std::vector<double> probs;

    double prob_at(long long k) const {
        return space.contains(k) ? probs[space.index_of(k)] : 0.0;
    }
};

Distribution point_mass(StateSpace space, long long k);

/// Sum of k * probs[k] over the support.
double mean(const Distribution& d);

}  // namespace zd
