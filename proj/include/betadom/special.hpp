#pragma once

#include <cmath>
#include <limits>

#include "betadom/rng.hpp"

namespace betadom {

// Regularized lower incomplete gamma P(a,x). Series expansion below the
// crossover x = a+1, Lentz continued fraction above it.
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw parameter_error("gamma_p: a must be positive");
    if (x < 0.0) throw parameter_error("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;

    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double term = 1.0 / a;
        double sum = term;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Continued fraction for Q(a,x) = 1 - P(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

inline double normal_cdf(double x, double mean = 0.0, double variance = 1.0) {
    if (variance < 0.0) throw parameter_error("normal_cdf: negative variance");
    if (variance == 0.0) return x < mean ? 0.0 : 1.0;
    return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

// CDF of the chi distribution with (real) dof degrees of freedom.
inline double chi_cdf(double x, double dof) {
    if (dof <= 0.0) throw parameter_error("chi_cdf: dof must be positive");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x * x);
}

// log of the chi pdf, used as Newton derivative in quantile inversion.
inline double chi_log_pdf(double x, double dof) {
    const double a = 0.5 * dof;
    const double ln2 = 0.6931471805599453094;
    return (dof - 1.0) * std::log(x) - 0.5 * x * x - (a - 1.0) * ln2 - std::lgamma(a);
}

} // namespace betadom
