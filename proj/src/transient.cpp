#include "zd/transient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zd {

namespace {

// Normalized Poisson(lt) weights on a window [j_lo, j_lo + size) around the
// mode, built by upward/downward recursion from the mode so that nothing
// underflows even for lt in the thousands. Terms below 1e-34 of the peak
// are dropped; their total mass is far below any tol accepted here.
struct PoissonWindow {
    long long j_lo = 0;
    std::vector<double> w;
};

PoissonWindow poisson_window(double lt) {
    constexpr double kRelCutoff = 1e-34;
    const long long mode = static_cast<long long>(std::floor(lt));

    std::vector<double> below;  // mode-1, mode-2, ... (scaled, peak = 1)
    double v = 1.0;
    for (long long j = mode; j > 0; --j) {
        v *= static_cast<double>(j) / lt;
        if (v < kRelCutoff) break;
        below.push_back(v);
    }
    std::vector<double> above;  // mode+1, mode+2, ...
    v = 1.0;
    for (long long j = mode;; ++j) {
        v *= lt / static_cast<double>(j + 1);
        if (v < kRelCutoff && j >= mode && static_cast<double>(j) > lt) break;
        above.push_back(v);
        if (above.size() > static_cast<size_t>(lt) + 2000000)
            throw std::runtime_error("poisson window failed to converge");
    }

    PoissonWindow win;
    win.j_lo = mode - static_cast<long long>(below.size());
    win.w.resize(below.size() + 1 + above.size());
    for (size_t i = 0; i < below.size(); ++i)
        win.w[below.size() - 1 - i] = below[i];
    win.w[below.size()] = 1.0;
    for (size_t i = 0; i < above.size(); ++i)
        win.w[below.size() + 1 + i] = above[i];

    double total = 0.0;
    for (double x : win.w) total += x;
    for (double& x : win.w) x /= total;
    return win;
}

Distribution propagate_impl(const ModelParams& p, std::vector<double> v, double t,
                            double tol) {
    if (t < 0.0) throw std::invalid_argument("t must be non-negative");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");

    const RateMatrix rm = rate_matrix(p);
    const long long m = rm.space.size();

    double lambda = 0.0;
    for (long long i = 0; i < m; ++i)
        lambda = std::max(lambda, rm.down[i] + rm.up[i]);

    Distribution out;
    out.space = rm.space;
    if (t == 0.0 || lambda == 0.0 || lambda * t == 0.0) {
        out.probs = std::move(v);
        return out;
    }

    // P = I + Q/lambda, kept as three probability diagonals.
    std::vector<double> pd(m), pu(m), ps(m);
    for (long long i = 0; i < m; ++i) {
        pd[i] = rm.down[i] / lambda;
        pu[i] = rm.up[i] / lambda;
        ps[i] = 1.0 - pd[i] - pu[i];
    }

    const PoissonWindow win = poisson_window(lambda * t);
    const long long j_hi = win.j_lo + static_cast<long long>(win.w.size()) - 1;

    std::vector<double> acc(m, 0.0), next(m);
    double cum = 0.0;
    for (long long j = 0; j <= j_hi; ++j) {
        if (j > 0) {
            // row-vector times P, tridiagonal
            for (long long i = 0; i < m; ++i) {
                double s = v[i] * ps[i];
                if (i > 0) s += v[i - 1] * pu[i - 1];
                if (i + 1 < m) s += v[i + 1] * pd[i + 1];
                next[i] = s;
            }
            v.swap(next);
        }
        if (j >= win.j_lo) {
            const double w = win.w[j - win.j_lo];
            for (long long i = 0; i < m; ++i) acc[i] += w * v[i];
            cum += w;
            if (cum >= 1.0 - tol) break;
        }
    }

    double total = 0.0;
    for (double x : acc) total += x;
    if (total > 0.0)
        for (double& x : acc) x /= total;
    for (double& x : acc) {
        if (x < 0.0) x = 0.0;  // cannot occur with non-negative terms; guard anyway
    }
    out.probs = std::move(acc);
    return out;
}

}  // namespace

Distribution transient_distribution(const ModelParams& p, double t, double tol) {
    std::vector<double> v(p.space().size(), 0.0);
    v[p.space().index_of(p.n1)] = 1.0;
    return propagate_impl(p, std::move(v), t, tol);
}

Distribution propagate(const ModelParams& p, const Distribution& init, double t,
                       double tol) {
    if (!(init.space == p.space()) ||
        init.probs.size() != static_cast<size_t>(p.space().size()))
        throw std::invalid_argument("initial distribution on a different state space");
    return propagate_impl(p, init.probs, t, tol);
}

double expected_opinion1(const ModelParams& p, double t, double tol) {
    return mean(transient_distribution(p, t, tol));
}

double mean_closed_form(const ModelParams& p, double t) {
    if (t < 0.0) throw std::invalid_argument("t must be non-negative");
    const double zsum = static_cast<double>(p.z0 + p.z1);
    const double limit = static_cast<double>(p.n) * static_cast<double>(p.z1) / zsum;
    const double decay = std::exp(-zsum * t / static_cast<double>(p.n - 1));
    return limit + (static_cast<double>(p.n1) - limit) * decay;
}

namespace {

DenseMatrix identity(long long m) {
    DenseMatrix I;
    I.rows = I.cols = m;
    I.a.assign(m * m, 0.0);
    for (long long i = 0; i < m; ++i) I.at(i, i) = 1.0;
    return I;
}

DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix z;
    z.rows = x.rows;
    z.cols = y.cols;
    z.a.assign(z.rows * z.cols, 0.0);
    for (long long i = 0; i < x.rows; ++i)
        for (long long k = 0; k < x.cols; ++k) {
            const double xv = x.at(i, k);
            if (xv == 0.0) continue;
            for (long long j = 0; j < y.cols; ++j) z.at(i, j) += xv * y.at(k, j);
        }
    return z;
}

// Solves D X = N in place by Gaussian elimination with partial pivoting.
DenseMatrix solve(DenseMatrix d, DenseMatrix n) {
    const long long m = d.rows;
    for (long long col = 0; col < m; ++col) {
        long long piv = col;
        for (long long r = col + 1; r < m; ++r)
            if (std::abs(d.at(r, col)) > std::abs(d.at(piv, col))) piv = r;
        if (d.at(piv, col) == 0.0)
            throw std::runtime_error("singular Pade denominator");
        if (piv != col) {
            for (long long j = 0; j < m; ++j) std::swap(d.at(piv, j), d.at(col, j));
            for (long long j = 0; j < m; ++j) std::swap(n.at(piv, j), n.at(col, j));
        }
        const double inv = 1.0 / d.at(col, col);
        for (long long r = 0; r < m; ++r) {
            if (r == col) continue;
            const double f = d.at(r, col) * inv;
            if (f == 0.0) continue;
            for (long long j = col; j < m; ++j) d.at(r, j) -= f * d.at(col, j);
            for (long long j = 0; j < m; ++j) n.at(r, j) -= f * n.at(col, j);
        }
    }
    for (long long r = 0; r < m; ++r) {
        const double inv = 1.0 / d.at(r, r);
        for (long long j = 0; j < m; ++j) n.at(r, j) *= inv;
    }
    return n;
}

}  // namespace

DenseMatrix dense_expm_oracle(const ModelParams& p, double t) {
    const RateMatrix rm = rate_matrix(p);
    const long long m = rm.space.size();
    if (m > 200) throw std::domain_error("state space too large for the dense oracle");

    DenseMatrix a;
    a.rows = a.cols = m;
    a.a.assign(m * m, 0.0);
    for (long long i = 0; i < m; ++i) {
        a.at(i, i) = t * rm.diag[i];
        if (i > 0) a.at(i, i - 1) = t * rm.down[i];
        if (i + 1 < m) a.at(i, i + 1) = t * rm.up[i];
    }

    double norm = 0.0;
    for (long long i = 0; i < m; ++i) {
        double row = 0.0;
        for (long long j = 0; j < m; ++j) row += std::abs(a.at(i, j));
        norm = std::max(norm, row);
    }

    int s = 0;
    if (norm > 0.5) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm))) + 1);
    const double scale = std::ldexp(1.0, -s);
    for (double& x : a.a) x *= scale;

    // Pade(6,6) on the scaled matrix, then repeated squaring.
    constexpr int q = 6;
    DenseMatrix num = identity(m);
    DenseMatrix den = identity(m);
    DenseMatrix pow = a;
    double c = 1.0;
    int sign = -1;
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
        for (long long i = 0; i < m * m; ++i) {
            num.a[i] += c * pow.a[i];
            den.a[i] += sign * c * pow.a[i];
        }
        sign = -sign;
        if (k < q) pow = matmul(pow, a);
    }

    DenseMatrix e = solve(std::move(den), std::move(num));
    for (int k = 0; k < s; ++k) e = matmul(e, e);
    return e;
}

}  // namespace zd
