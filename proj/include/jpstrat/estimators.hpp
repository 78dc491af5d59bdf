#ifndef JPSTRAT_ESTIMATORS_HPP
#define JPSTRAT_ESTIMATORS_HPP

#include <jpstrat/coeffs.hpp>
#include <jpstrat/design.hpp>
#include <jpstrat/gfunction.hpp>
#include <jpstrat/strata.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace jps {

struct EstimateResult {
    double value = 0.0;
    WeightScheme scheme = WeightScheme::StandardJps;
    std::vector<double> weights_used;
    int h_n = 0;
    bool full_rank = false;
};

// Post-stratum weights from the realized counts.  Conditions enforced: they
// sum to one, vanish on empty strata, and are symmetric functions of N.
inline std::vector<double> weights(WeightScheme scheme, const std::vector<int>& counts) {
    const auto H = static_cast<int>(counts.size());
    long total = 0;
    for (int c : counts) {
        if (c < 0) throw std::invalid_argument("weights: negative count");
        total += c;
    }
    if (total == 0) throw std::invalid_argument("weights: all strata empty");
    std::vector<double> w(counts.size(), 0.0);
    switch (scheme) {
        case WeightScheme::Srs:
            for (std::size_t r = 0; r < counts.size(); ++r)
                w[r] = static_cast<double>(counts[r]) / static_cast<double>(total);
            break;
        case WeightScheme::StandardJps: {
            int h = 0;
            for (int c : counts) h += (c > 0);
            for (std::size_t r = 0; r < counts.size(); ++r)
                w[r] = counts[r] > 0 ? 1.0 / h : 0.0;
            break;
        }
        case WeightScheme::FreyFeeman: {
            // a-sum in sorted-count order so the result is bitwise symmetric
            // under permutations of the counts
            std::vector<int> sorted = counts;
            std::sort(sorted.begin(), sorted.end());
            double asum = 0.0;
            for (int c : sorted) {
                if (c > 0) asum += static_cast<double>(c) / (static_cast<double>(H) * c + 2.0);
            }
            for (std::size_t r = 0; r < counts.size(); ++r) {
                w[r] = counts[r] > 0
                           ? (static_cast<double>(counts[r]) / (static_cast<double>(H) * counts[r] + 2.0)) / asum
                           : 0.0;
            }
            break;
        }
    }
    return w;
}

namespace detail {

inline std::vector<double> stratum_means(const JpsSample& s, const GFunction& g,
                                         const std::vector<int>& counts) {
    std::vector<double> mean(static_cast<std::size_t>(s.H), 0.0);
    for (const auto& p : s.pairs) mean[static_cast<std::size_t>(p.rank - 1)] += g(p.x);
    for (std::size_t r = 0; r < mean.size(); ++r) {
        if (counts[r] > 0) mean[r] /= counts[r];  // empty strata keep 0, weight is 0 anyway
    }
    return mean;
}

}  // namespace detail

inline EstimateResult estimate_g_mean(const JpsSample& sample, const GFunction& g,
                                      WeightScheme scheme) {
    if (sample.pairs.empty()) throw std::invalid_argument("estimate: empty sample");
    auto counts = sample.counts();
    auto w = weights(scheme, counts);
    auto mean = detail::stratum_means(sample, g, counts);
    EstimateResult res;
    res.scheme = scheme;
    res.weights_used = w;
    res.h_n = sample.occupied_strata();
    res.full_rank = res.h_n == sample.H;
    double v = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r) v += w[r] * mean[r];
    res.value = v;
    return res;
}

inline EstimateResult estimate_mean(const JpsSample& sample, WeightScheme scheme) {
    return estimate_g_mean(sample, GFunction::identity(), scheme);
}

// sigma^2 estimate as E-hat(X^2) - E-hat(X)^2 on the same weights; small-n
// underestimation is the price of the exact plug-in form, no truncation.
inline EstimateResult estimate_variance(const JpsSample& sample, WeightScheme scheme) {
    if (sample.pairs.size() < 2) throw std::invalid_argument("estimate_variance: need n >= 2");
    auto m1 = estimate_g_mean(sample, GFunction::identity(), scheme);
    auto m2 = estimate_g_mean(sample, GFunction::power(2), scheme);
    EstimateResult res = m1;
    res.value = m2.value - m1.value * m1.value;
    return res;
}

inline std::vector<EstimateResult> estimate_cdf(const JpsSample& sample, WeightScheme scheme,
                                                const std::vector<double>& grid) {
    std::vector<EstimateResult> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(estimate_g_mean(sample, GFunction::indicator(x), scheme));
    return out;
}

// Exact finite-sample variance of a class estimator:
// E(J1 C1^2) sum_r sigma^2_g[r] + H/(H-1) V(C1) sum_r (mu_g[r]-mu_g)^2.
inline double theoretical_variance(const CoefficientSet& coeffs, const StratumMoments& sm) {
    if (coeffs.H != sm.H) throw std::invalid_argument("theoretical_variance: H mismatch");
    double within = 0.0, between = 0.0;
    for (double v : sm.sigma2_r) within += v;
    for (double m : sm.mu_r) between += (m - sm.mu_g) * (m - sm.mu_g);
    double second = coeffs.H > 1
                        ? static_cast<double>(coeffs.H) / (coeffs.H - 1) * coeffs.v_c1 * between
                        : 0.0;
    return coeffs.e_j1c1sq * within + second;
}

// Equivalent form driven by the overall variance and the between-strata gap;
// kept as an independent algebraic route for cross-checks.
inline double theoretical_variance_alt(const CoefficientSet& coeffs, const StratumMoments& sm) {
    if (coeffs.H != sm.H) throw std::invalid_argument("theoretical_variance: H mismatch");
    double between = 0.0;
    for (double m : sm.mu_r) between += (m - sm.mu_g) * (m - sm.mu_g);
    between /= sm.H;
    return coeffs.k1 * sm.sigma2_g - (coeffs.k1 - coeffs.k2) * between;
}

// V(BRSS mean of g) with m cycles: (1/(m H^2)) sum_r sigma^2_g[r].
inline double brss_variance(const StratumMoments& sm, int m) {
    if (m < 1) throw std::invalid_argument("brss_variance: m must be >= 1");
    double within = 0.0;
    for (double v : sm.sigma2_r) within += v;
    return within / (static_cast<double>(m) * sm.H * sm.H);
}

// Bias of the plug-in variance estimator: E(sigma2-hat) - sigma^2 equals
// minus the variance of the mean estimator.
inline double variance_estimator_bias(const CoefficientSet& coeffs, const StratumMoments& sm) {
    return -theoretical_variance(coeffs, sm);
}

}  // namespace jps

#endif  // JPSTRAT_ESTIMATORS_HPP
