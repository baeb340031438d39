#pragma once

#include "zd/distribution.hpp"
#include "zd/model.hpp"

namespace zd {

/// Stationary distribution via the birth-death product form,
///   pi_k proportional to prod_{j=lo+1..k} up(j-1)/down(j),
/// accumulated as log-ratios with a log-sum-exp normalization. Degenerate
/// one-sided cases short-circuit: z1 = 0 gives the point mass at lo,
/// z0 = 0 the point mass at hi.
Distribution stationary_distribution(const ModelParams& p);

/// Independent route to pi: solves the linear system {pi Q = 0, sum pi = 1}
/// by banded forward elimination on Q^T (one redundant balance equation is
/// replaced by the normalization). Guarded to |S| <= 10^4; throws
/// std::runtime_error if the solve leaves a residual beyond tolerance.
Distribution nullspace_oracle(const ModelParams& p);

/// Expected opinion-1 count at equilibrium: n * z1 / (z0 + z1).
double equilibrium_expectation(const ModelParams& p);

}  // namespace zd
