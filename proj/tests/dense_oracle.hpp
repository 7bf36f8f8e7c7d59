#pragma once

// Test-only dense symmetric eigensolver (cyclic Jacobi) for small-n
// cross-checks of the tridiagonal production path.

#include <algorithm>
#include <cmath>
#include <vector>

#include "betadom/tridiagonal.hpp"

namespace betadom::testing {

using DenseMatrix = std::vector<std::vector<double>>;

inline DenseMatrix to_dense(const SymTridiagonal& T) {
    const std::size_t n = T.size();
    DenseMatrix A(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = T.diag[i];
        if (i + 1 < n) A[i][i + 1] = A[i + 1][i] = T.offdiag[i];
    }
    return A;
}

inline std::vector<double> dense_eigenvalues(DenseMatrix A) {
    const std::size_t n = A.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (A[p][q] == 0.0) continue;
                double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = A[i][p], aiq = A[i][q];
                    A[i][p] = c * aip - s * aiq;
                    A[i][q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = A[p][i], aqi = A[q][i];
                    A[p][i] = c * api - s * aqi;
                    A[q][i] = s * api + c * aqi;
                }
            }
    }
    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = A[i][i];
    std::sort(evals.begin(), evals.end());
    return evals;
}

inline std::vector<double> dense_eigenvalues(const SymTridiagonal& T) {
    return dense_eigenvalues(to_dense(T));
}

// Dense product B^t B for a lower-bidiagonal B given by (diag, subdiag).
inline DenseMatrix dense_gram(const std::vector<double>& diag,
                              const std::vector<double>& subdiag) {
    const std::size_t n = diag.size();
    DenseMatrix B(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) B[i][i] = diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) B[i + 1][i] = subdiag[i];
    DenseMatrix G(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) G[i][j] += B[k][i] * B[k][j];
    return G;
}

} // namespace betadom::testing
