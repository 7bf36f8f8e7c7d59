#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "betadom/rng.hpp"

namespace betadom {

struct EmpiricalDistribution {
    std::vector<double> samples; // sorted ascending

    explicit EmpiricalDistribution(std::vector<double> xs) : samples(std::move(xs)) {
        if (samples.empty())
            throw parameter_error("EmpiricalDistribution: needs at least one sample");
        std::sort(samples.begin(), samples.end());
    }

    std::size_t count() const { return samples.size(); }

    // fraction of samples <= t
    double ecdf(double t) const {
        auto it = std::upper_bound(samples.begin(), samples.end(), t);
        return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
    }
};

namespace detail {

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Sweep the pooled points of two sorted samples, tracking the ECDF difference
// with right continuity; reports both sup(Fx - Fy) and sup|Fx - Fy|.
inline std::pair<double, double> ecdf_sup_diffs(const std::vector<double>& x,
                                                const std::vector<double>& y) {
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d_plus = 0.0, d_abs = 0.0;
    while (i < x.size() || j < y.size()) {
        double t = (j >= y.size() || (i < x.size() && x[i] <= y[j])) ? x[i] : y[j];
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        double diff = static_cast<double>(i) / nx - static_cast<double>(j) / ny;
        d_plus = std::max(d_plus, diff);
        d_abs = std::max(d_abs, std::fabs(diff));
    }
    return {d_plus, d_abs};
}

} // namespace detail

struct KsResult {
    double statistic;
    double p_value;
};

// One-sided test of X >= Y in the stochastic order (F_X <= F_Y pointwise):
// d_plus = sup_t max(F_X(t) - F_Y(t), 0), p = exp(-2 d_plus^2 nm/(n+m)).
inline KsResult one_sided_ks(const EmpiricalDistribution& x, const EmpiricalDistribution& y) {
    auto [d_plus, d_abs] = detail::ecdf_sup_diffs(x.samples, y.samples);
    (void)d_abs;
    double ne = static_cast<double>(x.count()) * static_cast<double>(y.count()) /
                static_cast<double>(x.count() + y.count());
    return {d_plus, std::clamp(std::exp(-2.0 * d_plus * d_plus * ne), 0.0, 1.0)};
}

inline KsResult two_sample_ks(const EmpiricalDistribution& x, const EmpiricalDistribution& y) {
    auto [d_plus, d_abs] = detail::ecdf_sup_diffs(x.samples, y.samples);
    (void)d_plus;
    double ne = static_cast<double>(x.count()) * static_cast<double>(y.count()) /
                static_cast<double>(x.count() + y.count());
    return {d_abs, detail::kolmogorov_q(std::sqrt(ne) * d_abs)};
}

// One-sample test against an analytic CDF.
inline KsResult one_sample_ks(const EmpiricalDistribution& x,
                              const std::function<double(double)>& cdf) {
    const std::size_t n = x.count();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(x.samples[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return {d, detail::kolmogorov_q(std::sqrt(static_cast<double>(n)) * d)};
}

// Critical value for the one-sided statistic at level alpha:
// sqrt(-ln(alpha)/2) * sqrt((n+m)/(nm)).
inline double one_sided_critical_value(double alpha, std::size_t n, std::size_t m) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error("one_sided_critical_value: alpha must be in (0,1)");
    return std::sqrt(-std::log(alpha) / 2.0) *
           std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

struct DominanceReport {
    double d_plus = 0.0;
    double p_value_one_sided = 1.0;
    std::size_t pathwise_violations = 0;
    std::size_t n_pairs = 0;
    bool pass = false;
};

// Counts pairs violating hi >= lo - tol and attaches the one-sided KS of the
// hi marginal against the lo marginal.
inline DominanceReport pathwise_report(const std::vector<std::pair<double, double>>& pairs,
                                       double tol) {
    if (tol < 0.0) throw parameter_error("pathwise_report: tol must be >= 0");
    DominanceReport rep;
    rep.n_pairs = pairs.size();
    for (auto [hi, lo] : pairs)
        if (hi < lo - tol) ++rep.pathwise_violations;
    if (!pairs.empty()) {
        std::vector<double> his, los;
        his.reserve(pairs.size());
        los.reserve(pairs.size());
        for (auto [hi, lo] : pairs) { his.push_back(hi); los.push_back(lo); }
        KsResult ks = one_sided_ks(EmpiricalDistribution(std::move(his)),
                                   EmpiricalDistribution(std::move(los)));
        rep.d_plus = ks.statistic;
        rep.p_value_one_sided = ks.p_value;
    }
    rep.pass = rep.pathwise_violations == 0;
    return rep;
}

// Replica r draws from its own stream_id = r, so the output is independent
// of worker count; used both for EmpiricalDistribution construction and for
// replica-ordered CSV emission.
template <typename T, typename Sampler>
std::vector<T> mc_collect_as(std::size_t reps, std::uint64_t seed, unsigned workers,
                             Sampler&& sampler) {
    if (reps < 1) throw parameter_error("mc_collect: reps must be >= 1");
    if (workers == 0) workers = 1;
    std::vector<T> out(reps);
    if (workers == 1 || reps == 1) {
        for (std::size_t r = 0; r < reps; ++r) {
            RngStream stream(seed, r);
            out[r] = sampler(stream);
        }
        return out;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t r = w; r < reps; r += workers) {
                    RngStream stream(seed, r);
                    out[r] = sampler(stream);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

template <typename Sampler>
std::vector<double> mc_collect(std::size_t reps, std::uint64_t seed, unsigned workers,
                               Sampler&& sampler) {
    return mc_collect_as<double>(reps, seed, workers, std::forward<Sampler>(sampler));
}

// Replica-parallel collection of coupled (hi, lo) draws.
template <typename Sampler>
std::vector<std::pair<double, double>> mc_collect_pairs(std::size_t reps, std::uint64_t seed,
                                                        unsigned workers, Sampler&& sampler) {
    return mc_collect_as<std::pair<double, double>>(reps, seed, workers,
                                                    std::forward<Sampler>(sampler));
}

template <typename Sampler>
EmpiricalDistribution mc_run(std::size_t reps, std::uint64_t seed, unsigned workers,
                             Sampler&& sampler) {
    return EmpiricalDistribution(mc_collect(reps, seed, workers, std::forward<Sampler>(sampler)));
}

} // namespace betadom
