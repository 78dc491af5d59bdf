#ifndef JPSTRAT_EFFICIENCY_HPP
#define JPSTRAT_EFFICIENCY_HPP

#include <jpstrat/coeffs.hpp>
#include <jpstrat/estimators.hpp>
#include <jpstrat/strata.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace jps {

enum class ReRegime { VsSrs, VsBrssEqualH, VsBrssCrossH, FfVsStdJps };

struct REReport {
    double re = 1.0;
    ReRegime regime = ReRegime::VsSrs;
    int n = 1;
    int h_j = 1;
    int h_b = 0;  // 0 when not applicable
    double m1 = 1.0, m2 = 0.0, delta_g = 0.0;
};

// RE of a class estimator against the SRS mean of g at equal sample size:
// [M1 (1-delta) + M2 delta]^-1.
inline double re_vs_srs(const CoefficientSet& coeffs, double delta_g) {
    if (!(delta_g >= 0.0 && delta_g < 1.0))
        throw std::domain_error("re_vs_srs: delta must lie in [0,1)");
    return 1.0 / (coeffs.m1 * (1.0 - delta_g) + coeffs.m2 * delta_g);
}

// Large-n limit of the same ratio.
inline double are_vs_srs(double delta_g) {
    if (!(delta_g >= 0.0 && delta_g < 1.0))
        throw std::domain_error("are_vs_srs: delta must lie in [0,1)");
    return 1.0 / (1.0 - delta_g);
}

// RE against the BRSS mean at equal sample size n = m * H_B; the JPS side may
// use a different (typically larger) class size than the BRSS side.
inline double re_vs_brss(const CoefficientSet& coeffs_j, const StratumMoments& sm_j,
                         const StratumMoments& sm_b, int n) {
    if (coeffs_j.H != sm_j.H) throw std::invalid_argument("re_vs_brss: H mismatch on the JPS side");
    if (n % sm_b.H != 0)
        throw std::invalid_argument("re_vs_brss: n must be divisible by the BRSS class size");
    int m = n / sm_b.H;
    return brss_variance(sm_b, m) / theoretical_variance(coeffs_j, sm_j);
}

// Smallest heterogeneity delta for which the scheme at (n, H) is at least as
// efficient as SRS: (M1 - 1)/(M1 - M2).
inline double min_delta_for_dominance(const CoefficientSet& coeffs) {
    const double tol = 1e-12;
    if (std::abs(coeffs.m1 - 1.0) < tol && std::abs(coeffs.m2 - 1.0) < tol)
        throw std::domain_error("min_delta_for_dominance: scheme coincides with SRS");
    if (!(coeffs.m1 > coeffs.m2))
        throw std::domain_error("min_delta_for_dominance: requires M1 > M2");
    return (coeffs.m1 - 1.0) / (coeffs.m1 - coeffs.m2);
}

// Takahasi-Wakimoto ceiling on delta for the plain mean.
inline double tw_bound(int H) {
    if (H < 1) throw std::invalid_argument("tw_bound: H must be >= 1");
    return static_cast<double>(H - 1) / (H + 1);
}

inline bool tw_check(double delta, int H) { return delta <= tw_bound(H) + 1e-9; }

// RE of the Frey-Feeman mean estimator against the standard one at the same
// (n, H): ratio of the two finite-sample variances.
inline double re_ff_vs_std(int n, int H, double delta_g, const CoeffOptions& ff_opt = {}) {
    auto std_cs = coefficient_set(WeightScheme::StandardJps, n, H);
    auto ff_cs = coefficient_set(WeightScheme::FreyFeeman, n, H, ff_opt);
    double v_std = std_cs.m1 * (1.0 - delta_g) + std_cs.m2 * delta_g;
    double v_ff = ff_cs.m1 * (1.0 - delta_g) + ff_cs.m2 * delta_g;
    return v_std / v_ff;
}

// Variance difference between ranking on Y = g(X) and ranking on X:
// (K1-K2)/H * (sum of squared rank-X stratum means - same for rank-Y).
// Nonpositive whenever K1 > K2; zero when g is monotone on the support.
inline double y_ranking_gap(const CoefficientSet& coeffs, const Distribution& dist,
                            const GFunction& g, int H, const YRankMcOptions& mc = {}) {
    if (coeffs.H != H) throw std::invalid_argument("y_ranking_gap: H mismatch");
    auto smx = stratum_moments(dist, g, H);
    auto smy = transformed_stratum_moments(dist, g, H, RankBy::Y, mc);
    double ssx = 0.0, ssy = 0.0;
    for (int r = 0; r < H; ++r) {
        ssx += smx.mu_r[static_cast<std::size_t>(r)] * smx.mu_r[static_cast<std::size_t>(r)];
        ssy += smy.mu_r[static_cast<std::size_t>(r)] * smy.mu_r[static_cast<std::size_t>(r)];
    }
    return (coeffs.k1 - coeffs.k2) / H * (ssx - ssy);
}

// Rearrangement inequality over rows: sum of squared column sums can only
// grow when every row is sorted first.  Returns (sorted-rows value, raw value).
inline std::pair<double, double> ordered_sumsq_pair(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {0.0, 0.0};
    const std::size_t k = rows[0].size();
    for (const auto& row : rows) {
        if (row.size() != k) throw std::invalid_argument("ordered_sumsq_pair: ragged input");
    }
    std::vector<double> raw(k, 0.0), ordered(k, 0.0);
    std::vector<double> tmp;
    for (const auto& row : rows) {
        tmp = row;
        std::sort(tmp.begin(), tmp.end());
        for (std::size_t j = 0; j < k; ++j) {
            raw[j] += row[j];
            ordered[j] += tmp[j];
        }
    }
    double s_raw = 0.0, s_ord = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        s_raw += raw[j] * raw[j];
        s_ord += ordered[j] * ordered[j];
    }
    return {s_ord, s_raw};
}

inline bool ordered_sumsq_dominates(const std::vector<std::vector<double>>& rows) {
    auto [s_ord, s_raw] = ordered_sumsq_pair(rows);
    return s_ord >= s_raw - 1e-9 * std::max(1.0, std::abs(s_raw));
}

struct OptimalHResult {
    int h_opt = 1;
    double mre = 1.0;                // maximum RE at two-decimal precision
    std::vector<double> re_curve;    // unrounded RE per H = 1..h_max
    std::vector<int> tied;           // every H attaining the rounded maximum
};

namespace detail {
inline long round2(double x) { return std::llround(x * 100.0); }
}

// Class size minimizing the mean-estimator variance for the given scheme.
// REs are compared at two-decimal precision; ties go to the smallest H, so
// h_opt = 1 means SRS is not beaten.
inline OptimalHResult optimal_h(int n, const Distribution& dist, WeightScheme scheme,
                                int h_max = 25, const CoeffOptions& opt = {}) {
    if (h_max < 1) throw std::invalid_argument("optimal_h: h_max must be >= 1");
    OptimalHResult res;
    res.re_curve.resize(static_cast<std::size_t>(h_max));
    res.re_curve[0] = 1.0;  // H = 1 is SRS itself
    long best = detail::round2(1.0);
    res.h_opt = 1;
    for (int H = 2; H <= h_max; ++H) {
        double delta = delta_identity(dist, H);
        auto cs = coefficient_set(scheme, n, H, opt);
        double re = re_vs_srs(cs, delta);
        res.re_curve[static_cast<std::size_t>(H - 1)] = re;
        long rounded = detail::round2(re);
        if (rounded > best) {
            best = rounded;
            res.h_opt = H;
        }
    }
    res.mre = static_cast<double>(best) / 100.0;
    for (int H = 1; H <= h_max; ++H) {
        if (detail::round2(res.re_curve[static_cast<std::size_t>(H - 1)]) == best)
            res.tied.push_back(H);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Study grids: the JPS-vs-BRSS cells and the optimal-H rows emitted by the
// table commands.

struct ReTableCell {
    std::string dist;
    int h_b = 3;
    int h_j = 3;
    double re = 1.0;
};

inline const std::vector<int>& re_table_hj_values() {
    static const std::vector<int> v = {3, 4, 5, 6, 7, 8, 10, 12, 14};
    return v;
}

// JPS (class size h_j) against BRSS (class size h_b) across the catalog at
// sample size n; n must be divisible by 3 and 5.
inline std::vector<ReTableCell> re_table_brss(int n) {
    std::vector<ReTableCell> cells;
    for (const auto& dist : catalog()) {
        std::map<int, double> delta;
        for (int hb : {3, 5}) {
            if (!delta.count(hb)) delta[hb] = delta_identity(dist, hb);
            for (int hj : re_table_hj_values()) {
                if (!delta.count(hj)) delta[hj] = delta_identity(dist, hj);
                auto cs = coefficient_set(WeightScheme::StandardJps, n, hj);
                double re =
                    (1.0 - delta[hb]) / (cs.m1 * (1.0 - delta[hj]) + cs.m2 * delta[hj]);
                cells.push_back({dist.name(), hb, hj, re});
            }
        }
    }
    return cells;
}

struct OptHRow {
    std::string dist;
    int n = 5;
    int h_opt = 1;
    double mre = 1.0;
};

inline std::vector<OptHRow> optimal_h_table(int h_max = 25) {
    std::vector<OptHRow> rows;
    for (const auto& dist : catalog()) {
        // delta depends on H only; reuse across the n sweep through a cache
        std::map<int, double> delta;
        for (int H = 2; H <= h_max; ++H) delta[H] = delta_identity(dist, H);
        for (int n = 5; n <= 50; n += 5) {
            long best = detail::round2(1.0);
            int hopt = 1;
            for (int H = 2; H <= h_max; ++H) {
                auto cs = coefficient_set(WeightScheme::StandardJps, n, H);
                long r2 = detail::round2(re_vs_srs(cs, delta[H]));
                if (r2 > best) {
                    best = r2;
                    hopt = H;
                }
            }
            rows.push_back({dist.name(), n, hopt, static_cast<double>(best) / 100.0});
        }
    }
    return rows;
}

// Recommended class size per sample size: the per-n mode of h_opt over the
// catalog members that are not heavy tailed or strongly skewed; mode ties go
// to the smaller H.
inline std::vector<std::pair<int, int>> recommended_h_table(int h_max = 25) {
    static const char* kSubset[] = {"normal", "uniform", "beta(0.5,0.5)", "exp",
                                    "chisq(5)", "weibull(1.5)", "t3"};
    auto rows = optimal_h_table(h_max);
    std::vector<std::pair<int, int>> out;
    for (int n = 5; n <= 50; n += 5) {
        std::map<int, int> freq;
        for (const auto& row : rows) {
            if (row.n != n) continue;
            for (const char* nm : kSubset) {
                if (row.dist == nm) ++freq[row.h_opt];
            }
        }
        int best_h = 1, best_count = 0;
        for (const auto& [h, c] : freq) {
            if (c > best_count) {
                best_count = c;
                best_h = h;
            }
        }
        out.emplace_back(n, best_h);
    }
    return out;
}

}  // namespace jps

#endif  // JPSTRAT_EFFICIENCY_HPP
