#include "zd/model.hpp"

#include <stdexcept>
#include <string>

namespace zd {

ModelParams new_model(long long n, long long z0, long long z1, long long n1) {
    if (n < 2)
        throw std::invalid_argument("n must be at least 2, got " + std::to_string(n));
    if (z0 < 0 || z1 < 0)
        throw std::invalid_argument("zealot counts must be non-negative");
    if (z0 + z1 < 1)
        throw std::invalid_argument("at least one zealot is required (z0 + z1 >= 1)");
    if (z0 + z1 > n)
        throw std::invalid_argument("zealots exceed the population (z0 + z1 > n)");
    if (n1 < z1 || n1 > n - z0)
        throw std::invalid_argument("n1 = " + std::to_string(n1) +
                                    " outside the state space [" + std::to_string(z1) +
                                    ", " + std::to_string(n - z0) + "]");
    return ModelParams{n, z0, z1, n1};
}

Rates transition_rates(const ModelParams& p, long long k) {
    if (!p.space().contains(k))
        throw std::out_of_range("state " + std::to_string(k) + " outside [" +
                                std::to_string(p.space().lo) + ", " +
                                std::to_string(p.space().hi) + "]");
    const double denom = static_cast<double>(p.n - 1);
    Rates r;
    r.down = static_cast<double>((k - p.z1) * (p.n - k)) / denom;
    r.up = static_cast<double>(k * (p.n - k - p.z0)) / denom;
    r.stay = -r.down - r.up;
    return r;
}

RateMatrix rate_matrix(const ModelParams& p) {
    const StateSpace space = p.space();
    const long long m = space.size();
    RateMatrix rm;
    rm.space = space;
    rm.down.resize(m);
    rm.up.resize(m);
    rm.diag.resize(m);
    for (long long i = 0; i < m; ++i) {
        const Rates r = transition_rates(p, space.state_of(i));
        rm.down[i] = r.down;
        rm.up[i] = r.up;
        rm.diag[i] = r.stay;
    }
    return rm;
}

}  // namespace zd
