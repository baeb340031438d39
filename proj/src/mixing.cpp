#include "zd/mixing.hpp"

#include <cmath>
#include <stdexcept>

#include "zd/equilibrium.hpp"
#include "zd/transient.hpp"

namespace zd {

double total_variation(const Distribution& mu, const Distribution& nu) {
    if (!(mu.space == nu.space))
        throw std::invalid_argument("total variation requires matching state spaces");
    double s = 0.0;
    for (size_t i = 0; i < mu.probs.size(); ++i)
        s += std::abs(mu.probs[i] - nu.probs[i]);
    return 0.5 * s;
}

double default_mixing_horizon(const ModelParams& p) {
    return 1e4 * static_cast<double>(p.n - 1) / static_cast<double>(p.z0 + p.z1);
}

MixingResult mixing_time(const ModelParams& p, double eps, double t_resolution) {
    return mixing_time(p, eps, t_resolution, default_mixing_horizon(p));
}

MixingResult mixing_time(const ModelParams& p, double eps, double t_resolution,
                         double t_max) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    if (!(t_resolution > 0.0)) throw std::invalid_argument("t_resolution must be positive");

    const Distribution pi = stationary_distribution(p);
    long long evals = 0;
    const auto tv_at = [&](double t) {
        ++evals;
        return total_variation(transient_distribution(p, t), pi);
    };

    MixingResult res;
    res.eps = eps;

    // Already within eps at t = 0: the infimum over t > 0 is 0.
    if (tv_at(0.0) < eps) {
        res.t_mix = res.t_low = res.t_high = 0.0;
        res.evaluations = evals;
        return res;
    }

    // Geometric doubling until TV first drops below eps.
    double lo = 0.0, hi = 1.0;
    while (tv_at(hi) >= eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > t_max)
            throw std::runtime_error("TV never dropped below eps before t_max");
    }
    const double scan_base = lo;

    // Bisection inside the crossing interval.
    while (hi - lo > t_resolution) {
        const double mid = 0.5 * (lo + hi);
        if (tv_at(mid) < eps)
            hi = mid;
        else
            lo = mid;
    }

    // TV is not provably monotone in t; a forward scan over the doubling
    // bracket catches any earlier dip below eps at t_resolution granularity.
    for (double s = scan_base + t_resolution; s < lo + 0.5 * t_resolution;
         s += t_resolution) {
        if (tv_at(s) < eps) {
            hi = s;
            lo = s - t_resolution;
            break;
        }
    }

    res.t_mix = hi;
    res.t_low = lo;
    res.t_high = hi;
    res.evaluations = evals;
    return res;
}

}  // namespace zd
