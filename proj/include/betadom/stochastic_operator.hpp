#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "betadom/distributions.hpp"
#include "betadom/tridiagonal.hpp"

namespace betadom {

// Finite-difference grid for the order-k stochastic operator on [0, L] with
// Dirichlet conditions at both ends; interior points x_i = i*h, i = 1..N-1,
// N = floor(L/h). The truncation at L is a bias source controlled by L.
struct OperatorGrid {
    int k;
    double length;
    double h;

    OperatorGrid(int k_, double length_, double h_) : k(k_), length(length_), h(h_) {
        if (k < 0) throw parameter_error("OperatorGrid: k must be >= 0");
        if (!(h > 0.0)) throw parameter_error("OperatorGrid: h must be positive");
        if (!(h < length)) throw parameter_error("OperatorGrid: requires h < L");
    }

    std::size_t interior_points() const {
        return static_cast<std::size_t>(std::floor(length / h)) - 1;
    }
    double point(std::size_t i) const { return static_cast<double>(i + 1) * h; }
    double potential(std::size_t i) const {
        return std::pow(point(i), 1.0 / (2.0 * k + 1.0));
    }
};

// White noise shared across all beta: one standard normal per grid cell,
// with cell weights v_i = integral of x^{-2k/(2k+1)} over [i*h, (i+1)*h]
// evaluated in closed form, finite on the first cell despite the x=0
// singularity.
struct NoisePath {
    std::vector<double> g; // standard normals
    std::vector<double> v; // cell weights
};

inline std::vector<double> cell_weights(const OperatorGrid& grid) {
    const double q = 1.0 / (2.0 * grid.k + 1.0);
    const std::size_t n = grid.interior_points();
    std::vector<double> v(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double right = std::pow(static_cast<double>(i + 1) * grid.h, q);
        v[i] = (2.0 * grid.k + 1.0) * (right - prev);
        prev = right;
    }
    return v;
}

inline NoisePath build_noise(const OperatorGrid& grid, RngStream& stream) {
    NoisePath path;
    path.v = cell_weights(grid);
    path.g.resize(path.v.size());
    for (double& x : path.g) x = normal(stream);
    return path;
}

// Discretized operator, kept as deterministic part plus per-entry noise
// coefficients so couplings can cancel the noise exactly.
struct DiscretizedOperator {
    SymTridiagonal matrix;           // assembled: det_diag + noise_coeff * g
    std::vector<double> det_diag;    // deterministic diagonal
    std::vector<double> noise_coeff; // multiplies g[i]
};

namespace detail {

// diag = 2a/h^2 + b x^{1/(2k+1)} + c (sqrt(v_i)/h) g_i, offdiag = -a/h^2.
inline DiscretizedOperator build_operator(const OperatorGrid& grid, double laplace_coeff,
                                          double potential_coeff, double noise_amp,
                                          const NoisePath& noise) {
    const std::size_t n = grid.interior_points();
    DiscretizedOperator op;
    op.det_diag.resize(n);
    op.noise_coeff.resize(n);
    op.matrix.diag.resize(n);
    op.matrix.offdiag.assign(n > 0 ? n - 1 : 0, -laplace_coeff / (grid.h * grid.h));
    for (std::size_t i = 0; i < n; ++i) {
        op.det_diag[i] = 2.0 * laplace_coeff / (grid.h * grid.h) +
                         potential_coeff * grid.potential(i);
        op.noise_coeff[i] = noise_amp * std::sqrt(noise.v[i]) / grid.h;
        op.matrix.diag[i] = op.det_diag[i] + op.noise_coeff[i] * noise.g[i];
    }
    return op;
}

inline double rescale_exponent(int k) { return (2.0 * k + 2.0) / (2.0 * k + 1.0); }

} // namespace detail

inline DiscretizedOperator discretize(const OperatorGrid& grid, double beta,
                                      const NoisePath& noise) {
    if (!(beta > 0.0)) throw parameter_error("discretize: beta must be positive");
    return detail::build_operator(grid, 1.0, 1.0, 2.0 / std::sqrt(beta), noise);
}

// H_beta^p: the y = p x change of variables discretized on the same grid.
inline DiscretizedOperator rescaled_operator(const OperatorGrid& grid, double beta,
                                             double p, const NoisePath& noise) {
    if (!(beta > 0.0)) throw parameter_error("rescaled_operator: beta must be positive");
    if (!(p > 0.0)) throw parameter_error("rescaled_operator: p must be positive");
    double q = std::pow(p, 1.0 / (2.0 * grid.k + 1.0));
    return detail::build_operator(grid, p, std::pow(p, -detail::rescale_exponent(grid.k)),
                                  2.0 / std::sqrt(q * beta), noise);
}

// One draw of TW_{beta,k}: the negative smallest eigenvalue of the
// discretized operator, up to discretization and truncation bias.
inline double sample_tw(const OperatorGrid& grid, double beta, RngStream& stream,
                        double tol = 1e-10) {
    NoisePath noise = build_noise(grid, stream);
    DiscretizedOperator op = discretize(grid, beta, noise);
    return -extremal_eigenvalue(op.matrix, Extremal::smallest, tol);
}

// Coupling parameters for the Loewner comparison gamma H_{beta2} >= H_{beta1}^p.
struct OperatorCouplingSpec {
    int k;
    double beta1, beta2;
    double p;
    double gamma; // sqrt(beta2 / (p^{1/(2k+1)} beta1))
    double alpha; // p * gamma
    double s;     // alpha = (beta2/beta1)^s

    OperatorCouplingSpec(int k_, double beta1_, double beta2_, double p_)
        : k(k_), beta1(beta1_), beta2(beta2_), p(p_) {
        if (k < 0) throw parameter_error("OperatorCouplingSpec: k must be >= 0");
        if (!(beta1 > 0.0) || !(beta2 >= beta1))
            throw parameter_error("OperatorCouplingSpec: requires beta2 >= beta1 > 0");
        if (!(p > 0.0)) throw parameter_error("OperatorCouplingSpec: p must be positive");
        double q = std::pow(p, 1.0 / (2.0 * k + 1.0));
        gamma = std::sqrt(beta2 / (q * beta1));
        alpha = p * gamma;
        s = (beta2 > beta1) ? std::log(alpha) / std::log(beta2 / beta1) : 0.0;
    }
};

// Admissible p-range ((b1/b2)^{(2k+1)/(4k+3)}, (b2/b1)^{(2k+1)/(4k+3)}).
inline std::pair<double, double> admissible_p_range(int k, double beta1, double beta2) {
    if (!(beta2 >= beta1) || !(beta1 > 0.0))
        throw parameter_error("admissible_p_range: requires beta2 >= beta1 > 0");
    double e = (2.0 * k + 1.0) / (4.0 * k + 3.0);
    double r = beta2 / beta1;
    return {std::pow(1.0 / r, e), std::pow(r, e)};
}

// alpha-range ((b2/b1)^{1/(4k+3)}, (b2/b1)^{(4k+2)/(4k+3)}).
inline std::pair<double, double> alpha_range(int k, double beta1, double beta2) {
    if (!(beta2 >= beta1) || !(beta1 > 0.0))
        throw parameter_error("alpha_range: requires beta2 >= beta1 > 0");
    double r = beta2 / beta1;
    double d = 4.0 * k + 3.0;
    return {std::pow(r, 1.0 / d), std::pow(r, (d - 1.0) / d)};
}

// The deterministic difference gamma H_{beta2} - H_{beta1}^p; the noise
// terms cancel exactly for a shared NoisePath.
inline SymTridiagonal ordering_gap(const OperatorCouplingSpec& spec, const OperatorGrid& grid) {
    if (spec.k != grid.k) throw parameter_error("ordering_gap: spec/grid k mismatch");
    const std::size_t n = grid.interior_points();
    const double a = spec.gamma - spec.p;
    const double b = spec.gamma - std::pow(spec.p, -detail::rescale_exponent(grid.k));
    SymTridiagonal T;
    T.diag.resize(n);
    T.offdiag.assign(n > 0 ? n - 1 : 0, -a / (grid.h * grid.h));
    for (std::size_t i = 0; i < n; ++i)
        T.diag[i] = 2.0 * a / (grid.h * grid.h) + b * grid.potential(i);
    return T;
}

// Shared-noise pair (H_{beta1}^p, gamma H_{beta2}) built with a bitwise
// identical noise coefficient on both sides (gamma * 2/sqrt(beta2) equals
// 2/sqrt(p^{1/(2k+1)} beta1) algebraically), so the ordering gap between the
// two assembled matrices is noise-free by construction.
inline std::pair<DiscretizedOperator, DiscretizedOperator> coupled_operators(
    const OperatorCouplingSpec& spec, const OperatorGrid& grid, const NoisePath& noise) {
    if (spec.k != grid.k) throw parameter_error("coupled_operators: spec/grid k mismatch");
    double q = std::pow(spec.p, 1.0 / (2.0 * grid.k + 1.0));
    double amp = 2.0 / std::sqrt(q * spec.beta1);
    DiscretizedOperator lower = detail::build_operator(
        grid, spec.p, std::pow(spec.p, -detail::rescale_exponent(grid.k)), amp, noise);
    DiscretizedOperator upper =
        detail::build_operator(grid, spec.gamma, spec.gamma, amp, noise);
    return {std::move(lower), std::move(upper)};
}

// One shared-noise draw: (lambda_min(H_{beta1}^p), lambda_min(gamma H_{beta2})).
// Second >= first whenever the ordering gap is positive semidefinite.
inline std::pair<double, double> coupled_tw_pair(const OperatorCouplingSpec& spec,
                                                 const OperatorGrid& grid, RngStream& stream,
                                                 double tol = 1e-12) {
    auto [plo, phi] = admissible_p_range(grid.k, spec.beta1, spec.beta2);
    if (spec.p < plo || spec.p > phi)
        throw parameter_error("coupled_tw_pair: p outside the admissible range");
    NoisePath noise = build_noise(grid, stream);
    auto [lower, upper] = coupled_operators(spec, grid, noise);
    return {extremal_eigenvalue(lower.matrix, Extremal::smallest, tol),
            extremal_eigenvalue(upper.matrix, Extremal::smallest, tol)};
}

} // namespace betadom
