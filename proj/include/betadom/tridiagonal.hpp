#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "betadom/rng.hpp"

namespace betadom {

struct SymTridiagonal {
    std::vector<double> diag;    // length n
    std::vector<double> offdiag; // length n-1

    std::size_t size() const { return diag.size(); }

    double inf_norm() const {
        double m = 0.0;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            double row = std::fabs(diag[i]);
            if (i > 0) row += std::fabs(offdiag[i - 1]);
            if (i + 1 < diag.size()) row += std::fabs(offdiag[i]);
            m = std::max(m, row);
        }
        return m;
    }

    // [lo, hi] containing all eigenvalues (Gershgorin discs).
    std::pair<double, double> gershgorin() const {
        double lo = diag[0], hi = diag[0];
        for (std::size_t i = 0; i < diag.size(); ++i) {
            double r = 0.0;
            if (i > 0) r += std::fabs(offdiag[i - 1]);
            if (i + 1 < diag.size()) r += std::fabs(offdiag[i]);
            lo = std::min(lo, diag[i] - r);
            hi = std::max(hi, diag[i] + r);
        }
        return {lo, hi};
    }

    std::vector<double> multiply(const std::vector<double>& v) const {
        const std::size_t n = size();
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = diag[i] * v[i];
            if (i > 0) s += offdiag[i - 1] * v[i - 1];
            if (i + 1 < n) s += offdiag[i] * v[i + 1];
            w[i] = s;
        }
        return w;
    }
};

enum class Extremal { smallest, largest };

// Number of eigenvalues of T strictly below x: count of negative pivots of
// the LDL^t factorization of T - x I. Pivot underflow is replaced by a tiny
// negative value, preserving count semantics.
inline std::size_t sturm_count(const SymTridiagonal& T, double x) {
    const std::size_t n = T.size();
    const double scale = std::max(1.0, T.inf_norm());
    const double tiny = 1e-300 + 2.2e-16 * scale * scale;
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double off2 = (i > 0) ? T.offdiag[i - 1] * T.offdiag[i - 1] : 0.0;
        d = (T.diag[i] - x) - off2 / d;
        if (std::fabs(d) < tiny) d = -tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

// Extremal eigenvalue by bisection on the Sturm count within Gershgorin
// bounds; stops when the bracket is narrower than tol * max(1, radius).
inline double extremal_eigenvalue(const SymTridiagonal& T, Extremal which,
                                  double tol = 1e-12) {
    if (!(tol > 0.0)) throw parameter_error("extremal_eigenvalue: tol must be positive");
    auto [glo, ghi] = T.gershgorin();
    const double radius = std::max(std::fabs(glo), std::fabs(ghi));
    const double width_goal = tol * std::max(1.0, radius);
    const std::size_t n = T.size();

    double margin = 2.2e-16 * std::max(1.0, radius);
    double lo = glo - margin;
    double hi = ghi + margin;
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= width_goal) return 0.5 * (lo + hi);
        double mid = 0.5 * (lo + hi);
        std::size_t c = sturm_count(T, mid);
        if (which == Extremal::largest) {
            // invariant: count(lo) < n <= count(hi)
            if (c < n) lo = mid; else hi = mid;
        } else {
            // invariant: count(lo) == 0 < count(hi)
            if (c == 0) lo = mid; else hi = mid;
        }
    }
    throw numerical_error("extremal_eigenvalue: iteration cap exceeded");
}

namespace detail {

// Solve (T - sigma I) v = w by LU with partial pivoting (row swaps between
// adjacent rows only; fill-in limited to a second superdiagonal).
inline bool shifted_solve(const SymTridiagonal& T, double sigma,
                          std::vector<double> rhs, std::vector<double>& out) {
    const std::size_t n = T.size();
    std::vector<double> a(n), b(n > 1 ? n - 1 : 0), c(n > 1 ? n - 1 : 0),
        d(n > 2 ? n - 2 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = T.diag[i] - sigma;
    for (std::size_t i = 0; i + 1 < n; ++i) { b[i] = T.offdiag[i]; c[i] = T.offdiag[i]; }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(c[i]) > std::fabs(a[i])) {
            std::swap(a[i], c[i]);
            std::swap(b[i], a[i + 1]);
            if (i + 2 < n) std::swap(d[i], b[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (a[i] == 0.0) return false;
        double m = c[i] / a[i];
        a[i + 1] -= m * b[i];
        if (i + 2 < n) b[i + 1] -= m * d[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (a[n - 1] == 0.0) return false;

    out.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        if (ii + 1 < n) s -= b[ii] * out[ii + 1];
        if (ii + 2 < n) s -= d[ii] * out[ii + 2];
        out[ii] = s / a[ii];
    }
    return true;
}

} // namespace detail

// Eigenvector for the largest eigenvalue by inverse iteration around the
// supplied lambda. Normalized; sign fixed so the largest-magnitude component
// is positive.
inline std::vector<double> top_eigenvector(const SymTridiagonal& T, double lambda,
                                           double tol = 1e-10) {
    const std::size_t n = T.size();
    const double scale = std::max(1.0, T.inf_norm());
    double shift = lambda + 1e-10 * scale;

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int attempt = 0; attempt < 5; ++attempt) {
        bool ok = true;
        for (int iter = 0; iter < 100; ++iter) {
            std::vector<double> w;
            if (!detail::shifted_solve(T, shift, v, w)) { ok = false; break; }
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            if (norm == 0.0 || !std::isfinite(norm)) { ok = false; break; }
            for (double& x : w) x /= norm;
            v = std::move(w);

            std::vector<double> tv = T.multiply(v);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::fabs(tv[i] - lambda * v[i]));
            if (res <= tol * scale) {
                std::size_t imax = 0;
                for (std::size_t i = 1; i < n; ++i)
                    if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
                if (v[imax] < 0.0)
                    for (double& x : v) x = -x;
                return v;
            }
        }
        if (ok && attempt == 4) break;
        shift += 1e-9 * scale * (attempt + 1); // jitter away from singularity
    }
    throw numerical_error("top_eigenvector: inverse iteration failed to converge");
}

} // namespace betadom
