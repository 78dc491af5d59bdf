#ifndef JPSTRAT_MCVERIFY_HPP
#define JPSTRAT_MCVERIFY_HPP

#include <jpstrat/coeffs.hpp>
#include <jpstrat/design.hpp>
#include <jpstrat/estimators.hpp>
#include <jpstrat/parallel.hpp>
#include <jpstrat/strata.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

namespace jps {

// Replicate-level Monte Carlo summary.  elapsed is wall time and is never
// serialized into output files, which must be byte-stable across runs.
struct McReport {
    std::uint64_t reps = 0;
    double mean = 0.0;
    double var = 0.0;
    double se_mean = 0.0;
    double se_var = 0.0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

namespace detail {

// Raw power sums around a deterministic shift (the first replicate's value),
// turned into mean / variance / fourth-moment standard errors.
inline McReport report_from_shifted(const std::array<double, 4>& sums, double shift,
                                    std::uint64_t reps, std::uint64_t seed) {
    const double n = static_cast<double>(reps);
    double m1 = sums[0] / n, m2 = sums[1] / n, m3 = sums[2] / n, m4 = sums[3] / n;
    McReport r;
    r.reps = reps;
    r.seed = seed;
    r.mean = shift + m1;
    r.var = m2 - m1 * m1;
    double c4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    r.se_mean = std::sqrt(std::max(0.0, r.var) / n);
    r.se_var = std::sqrt(std::max(0.0, c4 - r.var * r.var) / n);
    return r;
}

}  // namespace detail

// Distribution of a class estimator over replicated JPS samples.
template <class EstimatorFn>
McReport mc_replicate_stats(EstimatorFn&& estimator, std::uint64_t reps, std::uint64_t seed,
                            int threads) {
    auto t0 = std::chrono::steady_clock::now();
    const double shift = estimator(static_cast<std::uint64_t>(0));
    auto sums = parallel_accumulate<4>(reps, threads, [&](std::uint64_t rep, std::array<double, 4>& acc) {
        double d = estimator(rep) - shift;
        double d2 = d * d;
        acc = {d, d2, d2 * d, d2 * d2};
    });
    McReport r = detail::report_from_shifted(sums, shift, reps, seed);
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline McReport mc_estimator_stats(WeightScheme scheme, const Distribution& dist,
                                   const GFunction& g, int n, int H, const Ranker& ranker,
                                   std::uint64_t reps, std::uint64_t seed, int threads = 1) {
    return mc_replicate_stats(
        [&](std::uint64_t rep) {
            CounterRng rng(seed, rep);
            auto s = draw_jps(rng, dist, n, H, ranker);
            return estimate_g_mean(s, g, scheme).value;
        },
        reps, seed, threads);
}

// Kolmogorov distance between the sample and the standard normal.
inline double ks_distance_to_std_normal(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double f = normal_cdf(values[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Fills out[rep] deterministically regardless of thread scheduling.
template <class Fn>
void mc_fill_by_replicate(std::vector<double>& out, int threads, Fn&& fn) {
    parallel_accumulate<1>(out.size(), threads, [&](std::uint64_t rep, std::array<double, 1>& acc) {
        out[rep] = fn(rep);
        acc[0] = 0.0;
    });
}

struct NormalityReport {
    double ks_std = 0.0;          // KS distance of standardized standard-JPS mean
    double ks_ff = 0.0;           // same for the Frey-Feeman mean
    double rms_diff_scaled = 0.0; // sqrt(n) * RMS(ff - std)
    double var_std = 0.0;         // empirical variances of the standardized stats
    double var_ff = 0.0;
    double asym_sd = 0.0;         // sqrt((1/H) sum sigma^2_[r])
};

// Standardized replicate statistics sqrt(n)(mu-hat - mu)/asym_sd for both
// mean estimators from the same samples.
inline NormalityReport mc_normality(const Distribution& dist, int n, int H, std::uint64_t reps,
                                    std::uint64_t seed, int threads = 1) {
    auto sm = stratum_moments(dist, GFunction::identity(), H);
    double within = 0.0;
    for (double v : sm.sigma2_r) within += v;
    const double asym_sd = std::sqrt(within / H);
    const double mu = sm.mu_g;
    const double root_n = std::sqrt(static_cast<double>(n));

    std::vector<double> z_std(reps), z_ff(reps);
    auto sums = parallel_accumulate<1>(reps, threads, [&](std::uint64_t rep, std::array<double, 1>& acc) {
        CounterRng rng(seed, rep);
        auto s = draw_jps(rng, dist, n, H);
        double m_std = estimate_mean(s, WeightScheme::StandardJps).value;
        double m_ff = estimate_mean(s, WeightScheme::FreyFeeman).value;
        z_std[rep] = root_n * (m_std - mu) / asym_sd;
        z_ff[rep] = root_n * (m_ff - mu) / asym_sd;
        double d = root_n * (m_ff - m_std);
        acc[0] = d * d;
    });

    NormalityReport rep;
    rep.asym_sd = asym_sd;
    rep.rms_diff_scaled = std::sqrt(sums[0] / static_cast<double>(reps));
    auto var_of = [&](const std::vector<double>& z) {
        double s = 0.0, s2 = 0.0;
        for (double v : z) {
            s += v;
            s2 += v * v;
        }
        double m = s / static_cast<double>(z.size());
        return s2 / static_cast<double>(z.size()) - m * m;
    };
    rep.var_std = var_of(z_std);
    rep.var_ff = var_of(z_ff);
    rep.ks_std = ks_distance_to_std_normal(std::move(z_std));
    rep.ks_ff = ks_distance_to_std_normal(std::move(z_ff));
    return rep;
}

struct McEstimate {
    double value = 0.0;
    double se = 0.0;
};

// Monte Carlo estimate of a weight-scheme functional over multinomial draws;
// the fallback oracle when enumeration is out of budget.
inline McEstimate mc_coefficient(WeightScheme scheme, int n, int H, CoeffFunctional functional,
                                 std::uint64_t reps, std::uint64_t seed, int threads = 1) {
    if (H == 1) return {functional == CoeffFunctional::VC1 ? 0.0 : 1.0 / n, 0.0};
    auto sums = parallel_accumulate<4>(reps, threads, [&](std::uint64_t rep, std::array<double, 4>& acc) {
        CounterRng rng(seed, rep);
        thread_local std::vector<int> counts;
        counts.assign(static_cast<std::size_t>(H), 0);
        for (int i = 0; i < n; ++i) {
            auto r = static_cast<std::size_t>(rng.u01() * H);
            if (r >= static_cast<std::size_t>(H)) r = static_cast<std::size_t>(H - 1);
            ++counts[r];
        }
        double c1 = 0.0;
        switch (scheme) {
            case WeightScheme::Srs: c1 = static_cast<double>(counts[0]) / n; break;
            case WeightScheme::StandardJps: {
                if (counts[0] > 0) {
                    int h = 0;
                    for (int c : counts) h += (c > 0);
                    c1 = 1.0 / h;
                }
                break;
            }
            case WeightScheme::FreyFeeman: {
                if (counts[0] > 0) {
                    double asum = 0.0;
                    for (int c : counts) {
                        if (c > 0) asum += static_cast<double>(c) / (static_cast<double>(H) * c + 2.0);
                    }
                    c1 = (static_cast<double>(counts[0]) / (static_cast<double>(H) * counts[0] + 2.0)) / asum;
                }
                break;
            }
        }
        double j = counts[0] > 0 ? c1 * c1 / counts[0] : 0.0;
        acc = {c1, c1 * c1, j, functional == CoeffFunctional::VC1 ? c1 * c1 * c1 * c1 : j * j};
    });
    const double R = static_cast<double>(reps);
    McEstimate out;
    if (functional == CoeffFunctional::VC1) {
        double m1 = sums[0] / R, m2 = sums[1] / R, m4 = sums[3] / R;
        out.value = m2 - m1 * m1;
        out.se = std::sqrt(std::max(0.0, m4 - m2 * m2) / R);
    } else {
        double mj = sums[2] / R, mj2 = sums[3] / R;
        out.value = mj;
        out.se = std::sqrt(std::max(0.0, mj2 - mj * mj) / R);
    }
    return out;
}

}  // namespace jps

#endif  // JPSTRAT_MCVERIFY_HPP
