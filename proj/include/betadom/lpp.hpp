#pragma once

#include <algorithm>
#include <vector>

#include "betadom/distributions.hpp"

namespace betadom {

enum class LppModel { point_to_point, point_to_line, symmetrized };

// Point-to-point passage time G(n,n) over i.i.d. Exp(rate) vertex weights on
// [1..n]^2. Rolling-row recursion; weights are consumed in row-major order.
inline double lpp_point_to_point(int n, RngStream& stream, double rate = 1.0) {
    if (n < 1) throw parameter_error("lpp_point_to_point: n must be >= 1");
    std::vector<double> row(n + 1, 0.0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            row[j] = exponential(stream, rate) + std::max(row[j], row[j - 1]);
    return row[n];
}

namespace detail {

struct LppTriangleResult {
    double line_max;       // max of G over the antidiagonal i+j = 2n
    double point_to_point; // G(n,n), from the same weight field
};

inline LppTriangleResult lpp_triangle(int n, RngStream& stream, double rate) {
    std::vector<double> row(2 * n, 0.0);
    LppTriangleResult res{0.0, 0.0};
    bool first = true;
    for (int i = 1; i <= 2 * n - 1; ++i) {
        for (int j = 1; j <= 2 * n - i; ++j)
            row[j] = exponential(stream, rate) + std::max(row[j], row[j - 1]);
        double end = row[2 * n - i];
        if (first || end > res.line_max) res.line_max = end;
        first = false;
        if (i == n) res.point_to_point = row[n];
    }
    return res;
}

// Passage time on an explicit weight field (1-based logical indices).
inline double lpp_on_field(const std::vector<std::vector<double>>& w) {
    const std::size_t n = w.size();
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            row[j] = w[i][j - 1] + std::max(row[j], row[j - 1]);
    return row[n];
}

// Field for the symmetrized model on [1..2n]^2: zero diagonal, one Exp draw
// per unordered pair {i,j}, consumed in row-major order of (min, max).
inline std::vector<std::vector<double>> symmetrized_field(int n, RngStream& stream,
                                                          double rate) {
    const int side = 2 * n;
    std::vector<std::vector<double>> w(side, std::vector<double>(side, 0.0));
    for (int i = 0; i < side; ++i)
        for (int j = i + 1; j < side; ++j) {
            double e = exponential(stream, rate);
            w[i][j] = e;
            w[j][i] = e;
        }
    return w;
}

} // namespace detail

// Point-to-line passage time: max over endpoints on the antidiagonal
// u1 + u2 = 2n of the point-to-point times from (1,1).
inline double lpp_point_to_line(int n, RngStream& stream, double rate = 1.0) {
    if (n < 1) throw parameter_error("lpp_point_to_line: n must be >= 1");
    return detail::lpp_triangle(n, stream, rate).line_max;
}

// Symmetrized model: G(2n,2n) with weights symmetric across the diagonal and
// zero on it.
inline double lpp_symmetrized(int n, RngStream& stream, double rate = 1.0) {
    if (n < 1) throw parameter_error("lpp_symmetrized: n must be >= 1");
    return detail::lpp_on_field(detail::symmetrized_field(n, stream, rate));
}

} // namespace betadom
