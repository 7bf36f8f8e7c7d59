#pragma once

#include <cmath>
#include <utility>

#include "betadom/rng.hpp"
#include "betadom/special.hpp"

namespace betadom {

// Degrees of freedom of a chi distribution. Real-valued: the matrix models
// use chi_{beta*(n-i)} with arbitrary positive beta.
struct ChiDof {
    double dof;
    explicit ChiDof(double d) : dof(d) {
        if (!(d > 0.0)) throw parameter_error("ChiDof: dof must be positive");
    }
};

inline double normal(RngStream& stream, double mean = 0.0, double variance = 1.0) {
    if (variance < 0.0) throw parameter_error("normal: negative variance");
    // Box-Muller, cosine branch only; two uniforms per draw keeps replay
    // independent of call history.
    double u1 = stream.next_open01();
    double u2 = stream.next_open01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + std::sqrt(variance) * r * std::cos(6.283185307179586477 * u2);
}

inline double exponential(RngStream& stream, double rate = 1.0) {
    if (!(rate > 0.0)) throw parameter_error("exponential: rate must be positive");
    return -std::log(stream.next_open01()) / rate;
}

// Gamma(shape, scale) via Marsaglia-Tsang; shape < 1 handled by the boosting
// identity Gamma(a) = Gamma(a+1) * U^{1/a}.
inline double gamma_draw(RngStream& stream, double shape, double scale = 1.0) {
    if (!(shape > 0.0)) throw parameter_error("gamma: shape must be positive");
    if (!(scale > 0.0)) throw parameter_error("gamma: scale must be positive");

    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(stream.next_open01(), 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal(stream);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = stream.next_open01();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return boost * scale * d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * scale * d * v;
    }
}

inline double chi(RngStream& stream, ChiDof dof) {
    return std::sqrt(gamma_draw(stream, 0.5 * dof.dof, 2.0));
}

// Quantile of chi_dof: smallest x with P(chi <= x) = u. Bracketed Newton on
// the regularized incomplete gamma, bisection fallback, relative tolerance
// 1e-10, 200-iteration cap.
inline double chi_quantile(double u, ChiDof dof) {
    if (!(u > 0.0) || !(u < 1.0)) throw parameter_error("chi_quantile: u must be in (0,1)");
    const double k = dof.dof;

    double lo = 0.0;
    double hi = std::sqrt(k) + 1.0;
    while (chi_cdf(hi, k) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw numerical_error("chi_quantile: bracket expansion failed");
    }

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        double f = chi_cdf(x, k) - u;
        if (f > 0.0) hi = x; else lo = x;
        double lp = chi_log_pdf(x, k);
        double step_x = x;
        bool newton_ok = false;
        if (std::isfinite(lp)) {
            double pdf = std::exp(lp);
            if (pdf > 0.0) {
                step_x = x - f / pdf;
                newton_ok = step_x > lo && step_x < hi;
            }
        }
        double next = newton_ok ? step_x : 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-10 * std::max(next, 1e-300)) return next;
        x = next;
    }
    return x;
}

// Monotone (common-uniform) coupling of chi_{dof_hi} and chi_{dof_lo}.
// Returns (hi draw, lo draw) with hi >= lo pathwise.
inline std::pair<double, double> coupled_chi(RngStream& stream, ChiDof dof_hi, ChiDof dof_lo) {
    if (dof_hi.dof < dof_lo.dof)
        throw parameter_error("coupled_chi: dof_hi must be >= dof_lo");
    double u = stream.next_open01();
    return {chi_quantile(u, dof_hi), chi_quantile(u, dof_lo)};
}

} // namespace betadom
