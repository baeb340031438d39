#include "zd/distribution.hpp"

#include <stdexcept>

namespace zd {

Distribution point_mass(StateSpace space, long long k) {
    if (!space.contains(k))
        throw std::out_of_range("point mass outside the state space");
    Distribution d;
    d.space = space;
    d.probs.assign(space.size(), 0.0);
    d.probs[space.index_of(k)] = 1.0;
    return d;
}

double mean(const Distribution& d) {
    double s = 0.0;
    for (long long i = 0; i < d.space.size(); ++i)
        s += static_cast<double>(d.space.state_of(i)) * d.probs[i];
    return s;
}

}  // namespace zd
