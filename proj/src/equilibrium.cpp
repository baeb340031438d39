#include "zd/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zd {

Distribution stationary_distribution(const ModelParams& p) {
    const StateSpace space = p.space();
    const long long m = space.size();

    // One-sided zealotry makes the boundary absorbing (consensus).
    if (p.z1 == 0) return point_mass(space, space.lo);
    if (p.z0 == 0) return point_mass(space, space.hi);
    if (m == 1) return point_mass(space, space.lo);

    const RateMatrix rm = rate_matrix(p);

    // log pi_k up to a constant; ratios are up(k-1)/down(k), all positive here.
    std::vector<double> logw(m);
    logw[0] = 0.0;
    for (long long i = 1; i < m; ++i)
        logw[i] = logw[i - 1] + std::log(rm.up[i - 1]) - std::log(rm.down[i]);

    const double peak = *std::max_element(logw.begin(), logw.end());
    Distribution d;
    d.space = space;
    d.probs.resize(m);
    double total = 0.0;
    for (long long i = 0; i < m; ++i) {
        d.probs[i] = std::exp(logw[i] - peak);
        total += d.probs[i];
    }
    for (double& x : d.probs) x /= total;
    return d;
}

Distribution nullspace_oracle(const ModelParams& p) {
    const StateSpace space = p.space();
    const long long m = space.size();
    if (m > 10000) throw std::domain_error("state space too large for the null-space solve");

    if (m == 1) return point_mass(space, space.lo);

    const RateMatrix rm = rate_matrix(p);

    // Reducible generator: all stationary mass sits on the absorbing end.
    if (rm.up[0] == 0.0) return point_mass(space, space.lo);
    if (rm.down[m - 1] == 0.0) return point_mass(space, space.hi);

    // pi Q = 0 is a tridiagonal system in pi; drop the (redundant) last
    // balance equation, which the normalization replaces, and eliminate
    // forward:  pi_{k+1} = (pi_k (up_k + down_k) - pi_{k-1} up_{k-1}) / down_{k+1}.
    std::vector<double> x(m);
    x[0] = 1.0;
    x[1] = x[0] * rm.up[0] / rm.down[1];
    for (long long i = 1; i + 1 < m; ++i) {
        x[i + 1] = (x[i] * (rm.up[i] + rm.down[i]) - x[i - 1] * rm.up[i - 1]) / rm.down[i + 1];
        if (std::abs(x[i + 1]) > 1e250) {
            for (long long j = 0; j <= i + 1; ++j) x[j] *= 1e-250;
        }
    }

    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));

    // The dropped equation doubles as a consistency check on the solve;
    // its residual is judged against the solution scale, since the tail
    // components themselves may sit at the rounding floor.
    const double flow_in = x[m - 2] * rm.up[m - 2];
    const double flow_out = x[m - 1] * rm.down[m - 1];
    const double scale = peak * (rm.up[m - 2] + rm.down[m - 1]);
    if (scale > 0.0 && std::abs(flow_in - flow_out) > 1e-8 * scale)
        throw std::runtime_error("null-space solve left a residual beyond tolerance");
    double total = 0.0;
    for (double& v : x) {
        if (v < 0.0) {
            if (-v > 1e-8 * peak)
                throw std::runtime_error("null-space solve produced a negative component");
            v = 0.0;
        }
        total += v;
    }

    Distribution d;
    d.space = space;
    d.probs = std::move(x);
    for (double& v : d.probs) v /= total;
    return d;
}

double equilibrium_expectation(const ModelParams& p) {
    return static_cast<double>(p.n) * static_cast<double>(p.z1) /
           static_cast<double>(p.z0 + p.z1);
}

}  // namespace zd
