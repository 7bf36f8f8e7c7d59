#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "betadom/ensembles.hpp"
#include "betadom/special.hpp"
#include "betadom/stats.hpp"
#include "dense_oracle.hpp"

using namespace betadom;

TEST_CASE("sample_hermite: 1x1 eigenvalue is the single N(0,2) diagonal entry") {
    const int n = 100000;
    std::vector<double> xs(n);
    RngStream s(30);
    for (int i = 0; i < n; ++i) {
        auto h = sample_hermite(1, 2.0, s);
        REQUIRE(h.diag.size() == 1);
        REQUIRE(h.offdiag.empty());
        REQUIRE(hermite_lambda1(h) == Catch::Approx(h.diag[0] / std::sqrt(2.0)));
        xs[i] = h.diag[0];
    }
    auto ks = one_sample_ks(EmpiricalDistribution(xs),
                            [](double t) { return normal_cdf(t, 0.0, 2.0); });
    REQUIRE(ks.p_value > 0.001);
}

TEST_CASE("sample_hermite: eigenvalue sum equals the trace at n=2") {
    RngStream s(31);
    for (int rep = 0; rep < 50; ++rep) {
        auto h = sample_hermite(2, 1.5, s);
        auto evals = testing::dense_eigenvalues(h.matrix());
        REQUIRE(evals[0] + evals[1] == Catch::Approx(h.diag[0] + h.diag[1]).margin(1e-10));
    }
}

TEST_CASE("sample_hermite: scaled largest eigenvalue sits in the TW_2 bulk at n=200") {
    const int reps = 2000;
    RngStream unused(0);
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        RngStream s(32, r);
        auto h = sample_hermite(200, 2.0, s);
        sum += scale_hermite(hermite_lambda1(h), 200);
    }
    double mean = sum / reps;
    REQUIRE(mean >= -2.4);
    REQUIRE(mean <= -1.2);
}

TEST_CASE("sample_hermite: parameter validation") {
    RngStream s(1);
    REQUIRE_THROWS_AS(sample_hermite(0, 2.0, s), parameter_error);
    REQUIRE_THROWS_AS(sample_hermite(3, 0.0, s), parameter_error);
}

TEST_CASE("sample_laguerre: shapes and kappa constraint") {
    RngStream s(33);
    auto l = sample_laguerre(5, 6.5, 2.0, s);
    REQUIRE(l.diag.size() == 5);
    REQUIRE(l.subdiag.size() == 4);
    REQUIRE_THROWS_AS(sample_laguerre(3, 2.0, 1.0, s), parameter_error);
}

TEST_CASE("sample_laguerre: n=1 normalized eigenvalue is chi-squared_{beta kappa}/beta") {
    const int n = 100000;
    const double beta = 2.0, kappa = 3.0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        RngStream s(34, i);
        xs[i] = laguerre_lambda1(sample_laguerre(1, kappa, beta, s));
    }
    auto ks = one_sample_ks(EmpiricalDistribution(xs), [&](double t) {
        return t <= 0.0 ? 0.0 : gamma_p(0.5 * beta * kappa, 0.5 * beta * t);
    });
    REQUIRE(ks.p_value > 0.001);
}

TEST_CASE("coupled hermite: degenerate spec gives identical matrices") {
    HermiteCoupleSpec spec(3, 3, 2.0);
    RngStream s(35);
    auto pair = sample_coupled_hermite(spec, s);
    REQUIRE(pair.upper.diag == pair.lower.diag);
    REQUIRE(pair.upper.offdiag == pair.lower.offdiag);
}

TEST_CASE("coupled hermite: dof formula and entrywise corner domination") {
    HermiteCoupleSpec spec(3, 2, 2.0);
    REQUIRE(spec.beta2 == Catch::Approx(3.0));
    auto [dhi, dlo] = spec.offdiag_dofs(1);
    REQUIRE(dhi == Catch::Approx(4.0));
    REQUIRE(dlo == Catch::Approx(3.0));

    for (int r = 0; r < 100000; ++r) {
        RngStream s(36, r);
        auto pair = sample_coupled_hermite(spec, s);
        REQUIRE(pair.upper.diag[0] == pair.lower.diag[0]);
        REQUIRE(pair.upper.diag[1] == pair.lower.diag[1]);
        REQUIRE(pair.upper.offdiag[0] >= pair.lower.offdiag[0]);
    }
}

TEST_CASE("coupled hermite: pathwise largest-eigenvalue domination") {
    HermiteCoupleSpec spec(3, 2, 2.0);
    for (int r = 0; r < 2000; ++r) {
        RngStream s(37, r);
        auto pair = sample_coupled_hermite(spec, s);
        double hi = extremal_eigenvalue(pair.upper.matrix(), Extremal::largest);
        double lo = extremal_eigenvalue(pair.lower.matrix(), Extremal::largest);
        REQUIRE(hi >= lo - 1e-10);
    }
}

TEST_CASE("coupled hermite: marginals match direct sampling") {
    HermiteCoupleSpec spec(3, 2, 2.0);
    const int n = 100000;
    std::vector<double> coupled(n), direct(n);
    for (int r = 0; r < n; ++r) {
        RngStream s(38, r);
        coupled[r] = extremal_eigenvalue(sample_coupled_hermite(spec, s).upper.matrix(),
                                         Extremal::largest);
    }
    for (int r = 0; r < n; ++r) {
        RngStream s(39, r);
        direct[r] = extremal_eigenvalue(sample_hermite(3, 2.0, s).matrix(), Extremal::largest);
    }
    auto ks = two_sample_ks(EmpiricalDistribution(coupled), EmpiricalDistribution(direct));
    REQUIRE(ks.p_value > 0.001);
}

TEST_CASE("coupled hermite: quadratic-form witness on the lower top eigenvector") {
    HermiteCoupleSpec spec(4, 2, 1.0);
    for (int r = 0; r < 200; ++r) {
        RngStream s(40, r);
        auto pair = sample_coupled_hermite(spec, s);
        SymTridiagonal corner;
        corner.diag.assign(pair.upper.diag.begin(), pair.upper.diag.begin() + 2);
        corner.offdiag.assign(pair.upper.offdiag.begin(), pair.upper.offdiag.begin() + 1);
        double lam = extremal_eigenvalue(pair.lower.matrix(), Extremal::largest);
        auto v = top_eigenvector(pair.lower.matrix(), lam);
        auto cv = corner.multiply(v);
        auto lv = pair.lower.matrix().multiply(v);
        double qc = 0.0, ql = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) { qc += v[i] * cv[i]; ql += v[i] * lv[i]; }
        REQUIRE(qc >= ql - 1e-10);

        // interlacing: corner cannot beat the full matrix
        REQUIRE(extremal_eigenvalue(corner, Extremal::largest) <=
                extremal_eigenvalue(pair.upper.matrix(), Extremal::largest) + 1e-10);
    }
}

TEST_CASE("coupled laguerre: dof pairs at the worked example") {
    LaguerreCoupleSpec spec(4, 2, 3.0, 1.0);
    REQUIRE(spec.beta2 == Catch::Approx(2.0));
    REQUIRE(spec.kappa_upper == Catch::Approx(6.0));
    auto d1 = spec.diag_dofs(1);
    REQUIRE(d1.first == Catch::Approx(6.0));
    REQUIRE(d1.second == Catch::Approx(6.0));
    auto d2 = spec.diag_dofs(2);
    REQUIRE(d2.first == Catch::Approx(5.0));
    REQUIRE(d2.second == Catch::Approx(4.0));
    auto w1 = spec.subdiag_dofs(1);
    REQUIRE(w1.first == Catch::Approx(3.0));
    REQUIRE(w1.second == Catch::Approx(2.0));
}

TEST_CASE("coupled laguerre: first diagonal entries coincide pathwise") {
    LaguerreCoupleSpec spec(4, 2, 3.0, 1.0);
    for (int r = 0; r < 1000; ++r) {
        RngStream s(41, r);
        auto pair = sample_coupled_laguerre(spec, s);
        REQUIRE(pair.upper.diag[0] == pair.lower.diag[0]);
    }
}

TEST_CASE("coupled laguerre: pathwise gram largest-eigenvalue domination") {
    LaguerreCoupleSpec spec(4, 2, 3.0, 1.0);
    for (int r = 0; r < 2000; ++r) {
        RngStream s(42, r);
        auto pair = sample_coupled_laguerre(spec, s);
        double hi = extremal_eigenvalue(gram_tridiagonal(pair.upper), Extremal::largest);
        double lo = extremal_eigenvalue(gram_tridiagonal(pair.lower), Extremal::largest);
        REQUIRE(hi >= lo - 1e-10);
    }
}

TEST_CASE("scale_hermite: arithmetic") {
    REQUIRE(scale_hermite(2.0 * std::sqrt(9.0), 9) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(scale_hermite(3.0, 1) == Catch::Approx(1.0));
    REQUIRE(scale_hermite(0.0, 4) == Catch::Approx(-2.0 * std::pow(4.0, 2.0 / 3.0)));
    REQUIRE_THROWS_AS(scale_hermite(1.0, 0), parameter_error);
}

TEST_CASE("scale_laguerre: arithmetic and monotonicity") {
    double edge = std::pow(std::sqrt(3.0) + std::sqrt(2.0), 2.0);
    REQUIRE(scale_laguerre(edge, 2, 3.0) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(scale_laguerre(8.0, 1, 1.0) == Catch::Approx(std::pow(4.0, 1.0 / 3.0)));
    double a = scale_laguerre(5.0, 3, 4.0), b = scale_laguerre(6.0, 3, 4.0);
    REQUIRE(b > a);
    REQUIRE_THROWS_AS(scale_laguerre(1.0, 1, 0.0), parameter_error);
}

TEST_CASE("scaling identities hold to relative 1e-12") {
    auto h = scaling_identity_check(HermiteCoupleSpec(3, 2, 2.0));
    REQUIRE(h.ok);
    REQUIRE(h.max_rel_error <= 1e-12);

    auto h2 = scaling_identity_check(HermiteCoupleSpec(5, 5, 1.3));
    REQUIRE(h2.ok);

    auto l = scaling_identity_check(LaguerreCoupleSpec(4, 2, 3.0, 1.0));
    REQUIRE(l.ok);
    // the shared edge constant from the second displayed equality
    double lhs = 1.0 * std::pow(std::sqrt(6.0) + 2.0, 2.0);
    double rhs = 2.0 * std::pow(std::sqrt(3.0) + std::sqrt(2.0), 2.0);
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("scaled independent runs show distributional domination") {
    const int N = 20000;
    const int m = 12, n = 8;
    const double beta1 = 2.0, beta2 = 3.0;
    std::vector<double> xs(N), ys(N);
    for (int r = 0; r < N; ++r) {
        RngStream s(43, r);
        xs[r] = std::pow(beta1, 2.0 / 3.0) *
                scale_hermite(hermite_lambda1(sample_hermite(m, beta1, s)), m);
    }
    for (int r = 0; r < N; ++r) {
        RngStream s(44, r);
        ys[r] = std::pow(beta2, 2.0 / 3.0) *
                scale_hermite(hermite_lambda1(sample_hermite(n, beta2, s)), n);
    }
    auto ks = one_sided_ks(EmpiricalDistribution(xs), EmpiricalDistribution(ys));
    REQUIRE(ks.statistic < one_sided_critical_value(0.001, N, N));
}
