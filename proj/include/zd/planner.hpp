#pragma once

#include <optional>

namespace zd {

enum class PlanMode { inject, convert };

/// Inputs of the zealot-injection problem: reach average equilibrium
/// opinion lambda in a group of n users holding z0 0-zealots, while each
/// injected 1-zealot radicalizes alpha non-zealous users into 0-zealots.
/// convert mode turns existing members into 1-zealots instead of adding
/// users, which caps z1 at n - z0.
struct PlanRequest {
    long long n = 0;
    long long z0 = 0;
    double lambda = 0.5;
    double alpha = 0.0;
    std::optional<double> z_max;
    PlanMode mode = PlanMode::inject;
};

struct PlanOutcome {
    double z1_star_real = 0.0;             // unrounded optimum (inf when unbounded)
    std::optional<long long> z1_star;      // rounded, budget-capped; empty when unbounded
    bool feasible_exact = false;           // target exactly reachable at z1_star_real
    double discriminant = 0.0;             // D = 1 - lambda - alpha*lambda*z0
    double achieved_lambda = 0.0;          // equilibrium opinion at z1_star
                                           // (the z1 -> inf limit when unbounded)
    bool capped = false;
    bool unbounded = false;                // D <= 0 with no budget: no finite optimum
};

/// Average opinion at equilibrium under the backfire effect:
/// z1 / ((1 + alpha*z1)*z0 + z1). Reduces to z1/(z0+z1) at alpha = 0.
/// Throws std::invalid_argument when z0 = z1 = 0.
double equilibrium_opinion(double z0, double z1, double alpha = 0.0);

/// Optimal injection. With D = 1 - lambda - alpha*lambda*z0 > 0 the exact
/// optimum is lambda*z0/D, capped at the budget; with D <= 0 the target is
/// unreachable and the best play is the full budget (or unbounded when no
/// budget is given), since the squared gap to lambda decreases in z1.
PlanOutcome optimal_injection(const PlanRequest& req);

/// Whether converting existing members can reach lambda: at alpha = 0 this
/// is z0/n + lambda <= 1; with backfire it requires D > 0 and
/// z0 + lambda*z0/D <= n.
bool conversion_feasible(long long n, long long z0, double lambda, double alpha = 0.0);

/// Largest alpha for which conversion stays applicable, i.e. D(alpha) > 0
/// and z0 + z1*(alpha) <= n. Closed form from the boundary condition
/// z0 + lambda*z0/D = n. Returns nullopt when that alpha falls below
/// alpha_min (0.01 by default, the smallest backfire rate considered).
std::optional<double> max_alpha_for_conversion(long long n, long long z0, double lambda,
                                               double alpha_min = 0.01);

/// Floor or ceiling of the unrounded optimum, whichever brings the
/// equilibrium opinion closer to lambda; ties go to the floor.
long long round_zealots(double z1_real, double z0, double lambda, double alpha = 0.0);

}  // namespace zd
