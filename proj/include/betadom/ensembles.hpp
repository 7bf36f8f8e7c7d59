#pragma once

#include <cmath>
#include <vector>

#include "betadom/distributions.hpp"
#include "betadom/tridiagonal.hpp"

namespace betadom {

// Tridiagonal Hermite beta-ensemble sample. Entries are stored UNNORMALIZED
// (no 1/sqrt(beta) prefactor); the ensemble eigenvalue is
// lambda_1(matrix) / sqrt(beta).
struct HermiteSample {
    int n = 0;
    double beta = 0.0;
    std::vector<double> diag;    // X_i ~ N(0,2)
    std::vector<double> offdiag; // Y_i ~ chi_{beta(n-i)}

    SymTridiagonal matrix() const { return SymTridiagonal{diag, offdiag}; }
};

// Bidiagonal Laguerre beta-ensemble sample, also unnormalized: the ensemble
// eigenvalue is lambda_1(B^t B) / beta for the stored lower-bidiagonal B.
struct LaguerreSample {
    int n = 0;
    double kappa = 0.0;
    double beta = 0.0;
    std::vector<double> diag;    // Z_i ~ chi_{beta(kappa-i+1)}
    std::vector<double> subdiag; // W_i ~ chi_{beta(n-i)}
};

// B^t B of the stored lower-bidiagonal matrix, as a symmetric tridiagonal.
inline SymTridiagonal gram_tridiagonal(const LaguerreSample& L) {
    const std::size_t n = L.diag.size();
    SymTridiagonal T;
    T.diag.resize(n);
    T.offdiag.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        double w = (i + 1 < n) ? L.subdiag[i] : 0.0;
        T.diag[i] = L.diag[i] * L.diag[i] + w * w;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        T.offdiag[i] = L.diag[i + 1] * L.subdiag[i];
    return T;
}

inline HermiteSample sample_hermite(int n, double beta, RngStream& stream) {
    if (n < 1) throw parameter_error("sample_hermite: n must be >= 1");
    if (!(beta > 0.0)) throw parameter_error("sample_hermite: beta must be positive");
    HermiteSample s;
    s.n = n;
    s.beta = beta;
    s.diag.resize(n);
    s.offdiag.resize(n - 1);
    for (int i = 0; i < n; ++i) s.diag[i] = normal(stream, 0.0, 2.0);
    for (int i = 0; i + 1 < n; ++i) s.offdiag[i] = chi(stream, ChiDof(beta * (n - 1 - i)));
    return s;
}

inline LaguerreSample sample_laguerre(int n, double kappa, double beta, RngStream& stream) {
    if (n < 1) throw parameter_error("sample_laguerre: n must be >= 1");
    if (!(beta > 0.0)) throw parameter_error("sample_laguerre: beta must be positive");
    if (!(kappa > n - 1)) throw parameter_error("sample_laguerre: kappa must exceed n-1");
    LaguerreSample s;
    s.n = n;
    s.kappa = kappa;
    s.beta = beta;
    s.diag.resize(n);
    s.subdiag.resize(n - 1);
    for (int i = 0; i < n; ++i) s.diag[i] = chi(stream, ChiDof(beta * (kappa - i)));
    for (int i = 0; i + 1 < n; ++i) s.subdiag[i] = chi(stream, ChiDof(beta * (n - 1 - i)));
    return s;
}

// Normalized largest eigenvalues of the two ensembles.
inline double hermite_lambda1(const HermiteSample& s, double tol = 1e-12) {
    return extremal_eigenvalue(s.matrix(), Extremal::largest, tol) / std::sqrt(s.beta);
}

inline double laguerre_lambda1(const LaguerreSample& s, double tol = 1e-12) {
    return extremal_eigenvalue(gram_tridiagonal(s), Extremal::largest, tol) / s.beta;
}

// Edge scalings H_{n,beta} and L_{n,kappa,beta}.
inline double scale_hermite(double lambda1, int n) {
    if (n < 1) throw parameter_error("scale_hermite: n must be >= 1");
    double rn = std::sqrt(static_cast<double>(n));
    return (lambda1 / rn - 2.0) * std::pow(static_cast<double>(n), 2.0 / 3.0);
}

inline double scale_laguerre(double lambda1, int n, double kappa) {
    if (n < 1) throw parameter_error("scale_laguerre: n must be >= 1");
    if (!(kappa > 0.0)) throw parameter_error("scale_laguerre: kappa must be positive");
    double edge = std::pow(std::sqrt(kappa) + std::sqrt(static_cast<double>(n)), 2.0);
    return std::pow(kappa * n, 1.0 / 6.0) * std::pow(edge, 1.0 / 3.0) *
           (lambda1 / edge - 1.0);
}

// Coupling specification for the Hermite domination theorem: beta2 is
// derived as m*beta1/n so the rationality condition m*beta1 = n*beta2 holds
// exactly.
struct HermiteCoupleSpec {
    int m, n;
    double beta1, beta2;

    HermiteCoupleSpec(int m_, int n_, double beta1_)
        : m(m_), n(n_), beta1(beta1_), beta2(m_ * beta1_ / n_) {
        if (m < 1 || n < 1) throw parameter_error("HermiteCoupleSpec: sizes must be >= 1");
        if (!(beta1 > 0.0)) throw parameter_error("HermiteCoupleSpec: beta1 must be positive");
        if (m < n) throw parameter_error("HermiteCoupleSpec: requires m >= n (beta2 >= beta1)");
    }

    // dofs of the coupled off-diagonal entry i (1-based), (upper, lower)
    std::pair<double, double> offdiag_dofs(int i) const {
        return {beta1 * (m - i), beta2 * (n - i)};
    }
};

struct LaguerreCoupleSpec {
    int m, n;
    double kappa;  // parameter of the dominated beta2 ensemble
    double beta1, beta2;
    double kappa_upper; // m*kappa/n, parameter of the dominating beta1 ensemble

    LaguerreCoupleSpec(int m_, int n_, double kappa_, double beta1_)
        : m(m_), n(n_), kappa(kappa_), beta1(beta1_), beta2(m_ * beta1_ / n_),
          kappa_upper(m_ * kappa_ / n_) {
        if (m < 1 || n < 1) throw parameter_error("LaguerreCoupleSpec: sizes must be >= 1");
        if (!(beta1 > 0.0)) throw parameter_error("LaguerreCoupleSpec: beta1 must be positive");
        if (m < n) throw parameter_error("LaguerreCoupleSpec: requires m >= n (beta2 >= beta1)");
        if (!(kappa > n - 1)) throw parameter_error("LaguerreCoupleSpec: kappa must exceed n-1");
        if (!(kappa_upper > m - 1)) throw parameter_error("LaguerreCoupleSpec: m*kappa/n must exceed m-1");
    }

    std::pair<double, double> diag_dofs(int i) const {
        return {beta1 * (kappa_upper - i + 1), beta2 * (kappa - i + 1)};
    }
    std::pair<double, double> subdiag_dofs(int i) const {
        return {beta1 * (m - i), beta2 * (n - i)};
    }
};

struct CoupledHermitePair {
    HermiteSample upper; // dominating m x m, beta1
    HermiteSample lower; // dominated n x n, beta2
};

struct CoupledLaguerrePair {
    LaguerreSample upper; // dominating B_{m, m kappa/n, beta1}
    LaguerreSample lower; // dominated B_{n, kappa, beta2}
};

// Shared diagonal normals on the top n x n corner, quantile-coupled chi off
// diagonals; the remaining entries of the larger matrix are drawn after all
// coupled entries, in a fixed order.
inline CoupledHermitePair sample_coupled_hermite(const HermiteCoupleSpec& spec,
                                                 RngStream& stream) {
    const int m = spec.m, n = spec.n;
    CoupledHermitePair pair;
    pair.upper.n = m;
    pair.upper.beta = spec.beta1;
    pair.upper.diag.resize(m);
    pair.upper.offdiag.resize(m - 1);
    pair.lower.n = n;
    pair.lower.beta = spec.beta2;
    pair.lower.diag.resize(n);
    pair.lower.offdiag.resize(n - 1);

    for (int i = 0; i < n; ++i) {
        double x = normal(stream, 0.0, 2.0);
        pair.upper.diag[i] = x;
        pair.lower.diag[i] = x;
    }
    for (int i = 1; i < n; ++i) {
        auto [dhi, dlo] = spec.offdiag_dofs(i);
        auto [yhi, ylo] = coupled_chi(stream, ChiDof(dhi), ChiDof(dlo));
        pair.upper.offdiag[i - 1] = yhi;
        pair.lower.offdiag[i - 1] = ylo;
    }
    for (int i = n; i < m; ++i) pair.upper.diag[i] = normal(stream, 0.0, 2.0);
    for (int i = n; i < m; ++i)
        pair.upper.offdiag[i - 1] = chi(stream, ChiDof(spec.beta1 * (m - i)));
    return pair;
}

inline CoupledLaguerrePair sample_coupled_laguerre(const LaguerreCoupleSpec& spec,
                                                   RngStream& stream) {
    const int m = spec.m, n = spec.n;
    CoupledLaguerrePair pair;
    pair.upper.n = m;
    pair.upper.kappa = spec.kappa_upper;
    pair.upper.beta = spec.beta1;
    pair.upper.diag.resize(m);
    pair.upper.subdiag.resize(m - 1);
    pair.lower.n = n;
    pair.lower.kappa = spec.kappa;
    pair.lower.beta = spec.beta2;
    pair.lower.diag.resize(n);
    pair.lower.subdiag.resize(n - 1);

    for (int i = 1; i <= n; ++i) {
        auto [dhi, dlo] = spec.diag_dofs(i);
        auto [zhi, zlo] = coupled_chi(stream, ChiDof(dhi), ChiDof(dlo));
        pair.upper.diag[i - 1] = zhi;
        pair.lower.diag[i - 1] = zlo;
    }
    for (int i = 1; i < n; ++i) {
        auto [dhi, dlo] = spec.subdiag_dofs(i);
        auto [whi, wlo] = coupled_chi(stream, ChiDof(dhi), ChiDof(dlo));
        pair.upper.subdiag[i - 1] = whi;
        pair.lower.subdiag[i - 1] = wlo;
    }
    for (int i = n + 1; i <= m; ++i)
        pair.upper.diag[i - 1] = chi(stream, ChiDof(spec.beta1 * (spec.kappa_upper - i + 1)));
    for (int i = n; i < m; ++i)
        pair.upper.subdiag[i - 1] = chi(stream, ChiDof(spec.beta1 * (m - i)));
    return pair;
}

struct ScalingIdentityReport {
    // lhs/rhs of each verified equality and the max relative discrepancy
    std::vector<std::pair<double, double>> equalities;
    double max_rel_error = 0.0;
    bool ok = false;
};

namespace detail {
inline void check_equal(ScalingIdentityReport& r, double lhs, double rhs) {
    r.equalities.emplace_back(lhs, rhs);
    double rel = std::fabs(lhs - rhs) / std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
    r.max_rel_error = std::max(r.max_rel_error, rel);
}
} // namespace detail

// Verifies that the beta1- and beta2-side edge scalings agree: applying the
// scaled maps to the shared coupled matrix must give identical affine
// coefficients on both sides.
inline ScalingIdentityReport scaling_identity_check(const HermiteCoupleSpec& spec,
                                                    double rel_tol = 1e-12) {
    ScalingIdentityReport r;
    // constant terms: 2 (beta1 m)^{2/3} = 2 (beta2 n)^{2/3}
    detail::check_equal(r, 2.0 * std::pow(spec.beta1 * spec.m, 2.0 / 3.0),
                        2.0 * std::pow(spec.beta2 * spec.n, 2.0 / 3.0));
    // lambda1-coefficients after unwinding the 1/sqrt(beta) normalization:
    // (beta m)^{2/3} / (sqrt(m) sqrt(beta)) = (beta m)^{1/6}
    detail::check_equal(r, std::pow(spec.beta1 * spec.m, 1.0 / 6.0),
                        std::pow(spec.beta2 * spec.n, 1.0 / 6.0));
    r.ok = r.max_rel_error <= rel_tol;
    return r;
}

inline ScalingIdentityReport scaling_identity_check(const LaguerreCoupleSpec& spec,
                                                    double rel_tol = 1e-12) {
    ScalingIdentityReport r;
    const double m = spec.m, n = spec.n, k = spec.kappa;
    const double ku = spec.kappa_upper;
    detail::check_equal(
        r,
        std::pow(spec.beta1, 2.0 / 3.0) * std::pow(std::sqrt(m * m * k / n), 1.0 / 3.0) *
            std::pow(std::sqrt(ku) + std::sqrt(m), 2.0 / 3.0),
        std::pow(spec.beta2, 2.0 / 3.0) * std::pow(std::sqrt(k * n), 1.0 / 3.0) *
            std::pow(std::sqrt(k) + std::sqrt(n), 2.0 / 3.0));
    detail::check_equal(r,
                        spec.beta1 * std::pow(std::sqrt(ku) + std::sqrt(m), 2.0),
                        spec.beta2 * std::pow(std::sqrt(k) + std::sqrt(n), 2.0));
    r.ok = r.max_rel_error <= rel_tol;
    return r;
}

} // namespace betadom
