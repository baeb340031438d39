#pragma once

#include <vector>

#include "zd/distribution.hpp"
#include "zd/model.hpp"

namespace zd {

/// Row-major dense matrix, only used by the matrix-exponential oracle.
struct DenseMatrix {
    long long rows = 0;
    long long cols = 0;
    std::vector<double> a;

    double& at(long long i, long long j) { return a[i * cols + j]; }
    double at(long long i, long long j) const { return a[i * cols + j]; }
};

/// Distribution of the opinion-1 count at time t, starting from the point
/// mass at n1. Computed by uniformization: with L = max_k |q_kk| and
/// P = I + Q/L, the result is the Poisson(L*t)-weighted sum of e_{n1} P^j,
/// truncated once the accumulated Poisson weight reaches 1 - tol and then
/// renormalized. Throws std::invalid_argument for t < 0 or tol outside (0,1).
Distribution transient_distribution(const ModelParams& p, double t, double tol = 1e-10);

/// Same computation from an arbitrary initial distribution over the space.
Distribution propagate(const ModelParams& p, const Distribution& init, double t,
                       double tol = 1e-10);

/// Expected opinion-1 count at time t: sum of k * p_{n1,k}(t).
double expected_opinion1(const ModelParams& p, double t, double tol = 1e-10);

/// Closed-form mean. The drift of the chain is linear in the state,
/// (n*z1 - (z0+z1)*k)/(n-1), so the mean obeys a scalar linear ODE whose
/// solution is
///   n*z1/(z0+z1) + (n1 - n*z1/(z0+z1)) * exp(-(z0+z1)*t/(n-1)).
double mean_closed_form(const ModelParams& p, double t);

/// Full e^{tQ} by Pade scaling-and-squaring on the dense generator.
/// Cross-validation oracle only; throws std::domain_error when the state
/// space has more than 200 states.
DenseMatrix dense_expm_oracle(const ModelParams& p, double t);

}  // namespace zd
