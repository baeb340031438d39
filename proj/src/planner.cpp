#include "zd/planner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zd {

double equilibrium_opinion(double z0, double z1, double alpha) {
    if (z0 <= 0.0 && z1 <= 0.0)
        throw std::invalid_argument("equilibrium opinion needs z0 > 0 or z1 > 0");
    return z1 / ((1.0 + alpha * z1) * z0 + z1);
}

long long round_zealots(double z1_real, double z0, double lambda, double alpha) {
    if (z1_real < 0.0) throw std::invalid_argument("z1 must be non-negative");
    const double fl = std::floor(z1_real);
    const double ce = std::ceil(z1_real);
    if (fl == ce) return static_cast<long long>(fl);
    const double d_fl = std::abs(equilibrium_opinion(z0, fl, alpha) - lambda);
    const double d_ce = std::abs(equilibrium_opinion(z0, ce, alpha) - lambda);
    return static_cast<long long>(d_fl <= d_ce ? fl : ce);  // ties: fewer agents
}

PlanOutcome optimal_injection(const PlanRequest& req) {
    if (req.z0 < 1) throw std::invalid_argument("z0 must be positive");
    if (!(req.lambda > 0.0 && req.lambda < 1.0))
        throw std::invalid_argument("lambda must lie in (0, 1)");
    if (req.alpha < 0.0 || req.alpha > 1.0)
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (req.z_max && *req.z_max < 0.0)
        throw std::invalid_argument("z_max must be non-negative");

    const double z0 = static_cast<double>(req.z0);

    // Converted zealots come out of the existing members, so z0 + z1 <= n.
    std::optional<double> budget = req.z_max;
    if (req.mode == PlanMode::convert) {
        if (req.n < req.z0) throw std::invalid_argument("convert mode needs n >= z0");
        const double room = static_cast<double>(req.n - req.z0);
        budget = budget ? std::min(*budget, room) : room;
    }

    PlanOutcome out;
    out.discriminant = 1.0 - req.lambda - req.alpha * req.lambda * z0;

    if (out.discriminant > 0.0) {
        const double exact = req.lambda * z0 / out.discriminant;
        out.z1_star_real = exact;
        out.capped = budget && exact > *budget;
        out.feasible_exact = !out.capped;
        const double target = out.capped ? *budget : exact;
        long long rounded = round_zealots(target, z0, req.lambda, req.alpha);
        if (budget && static_cast<double>(rounded) > *budget)
            rounded = static_cast<long long>(std::floor(*budget));
        out.z1_star = rounded;
        out.achieved_lambda = equilibrium_opinion(z0, static_cast<double>(rounded), req.alpha);
        return out;
    }

    // D <= 0: the squared gap to lambda decreases in z1 without reaching 0,
    // so spend the whole budget, or report the problem unbounded.
    out.feasible_exact = false;
    if (budget) {
        out.z1_star_real = *budget;
        out.z1_star = static_cast<long long>(std::floor(*budget));
        out.capped = true;
        out.achieved_lambda =
            equilibrium_opinion(z0, static_cast<double>(*out.z1_star), req.alpha);
    } else {
        out.unbounded = true;
        out.z1_star_real = std::numeric_limits<double>::infinity();
        // Supremum of the reachable equilibrium opinion as z1 grows.
        out.achieved_lambda = 1.0 / (1.0 + req.alpha * z0);
    }
    return out;
}

bool conversion_feasible(long long n, long long z0, double lambda, double alpha) {
    if (z0 < 1 || z0 > n) throw std::invalid_argument("need 1 <= z0 <= n");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("lambda must lie in (0, 1)");
    if (alpha == 0.0)
        return static_cast<double>(z0) / static_cast<double>(n) + lambda <= 1.0;
    const double d = 1.0 - lambda - alpha * lambda * static_cast<double>(z0);
    if (d <= 0.0) return false;
    const double z1_real = lambda * static_cast<double>(z0) / d;
    return static_cast<double>(z0) + z1_real <= static_cast<double>(n);
}

std::optional<double> max_alpha_for_conversion(long long n, long long z0, double lambda,
                                               double alpha_min) {
    if (z0 < 1 || z0 > n) throw std::invalid_argument("need 1 <= z0 <= n");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("lambda must lie in (0, 1)");

    // Boundary z0 + lambda*z0/D(alpha) = n solved for alpha.
    const double room = static_cast<double>(n - z0);
    const double numer = room * (1.0 - lambda) - lambda * static_cast<double>(z0);
    if (numer < 0.0) return std::nullopt;
    if (room == 0.0) return std::nullopt;
    const double alpha = numer / (lambda * static_cast<double>(z0) * room);
    if (alpha < alpha_min) return std::nullopt;
    return alpha;
}

}  // namespace zd
