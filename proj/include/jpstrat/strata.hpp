#ifndef JPSTRAT_STRATA_HPP
#define JPSTRAT_STRATA_HPP

#include <jpstrat/distributions.hpp>
#include <jpstrat/gfunction.hpp>
#include <jpstrat/quadrature.hpp>
#include <jpstrat/rng.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace jps {

// Per-stratum moments of g(X) under perfect ranking with class size H:
// stratum r holds the r-th order statistic of H i.i.d. draws.
struct StratumMoments {
    int H = 1;
    double mu_g = 0.0;
    double sigma2_g = 0.0;
    std::vector<double> mu_r;
    std::vector<double> sigma2_r;
    double delta_g = 0.0;                // between-strata heterogeneity ratio
    std::vector<double> mc_se_mu_r;      // nonempty only for Monte Carlo estimates
};

// In-stratum CDFs F_(r)(x) = P(X_(r) <= x), r = 1..H: binomial tail in F(x).
inline std::vector<double> stratum_cdfs(const Distribution& dist, int H, double x) {
    if (H < 1) throw std::invalid_argument("stratum_cdfs: H must be >= 1");
    const double F = dist.cdf(x);
    std::vector<double> out(static_cast<std::size_t>(H));
    if (F <= 0.0 || F >= 1.0) {
        std::fill(out.begin(), out.end(), F <= 0.0 ? 0.0 : 1.0);
        return out;
    }
    // pmf of Bin(H, F) with a Pascal-row coefficient sweep, then tail sums
    std::vector<double> pmf(static_cast<std::size_t>(H) + 1);
    double coef = 1.0;
    for (int j = 0; j <= H; ++j) {
        if (j > 0) coef = coef * (H - j + 1) / j;
        pmf[static_cast<std::size_t>(j)] =
            coef * std::pow(F, j) * std::pow(1.0 - F, H - j);
    }
    double tail = 0.0;
    for (int r = H; r >= 1; --r) {
        tail += pmf[static_cast<std::size_t>(r)];
        out[static_cast<std::size_t>(r - 1)] = std::min(1.0, tail);
    }
    return out;
}

namespace detail {

inline double beta_weight(int H, int r, double u, double omu) {
    // H * C(H-1, r-1) * u^(r-1) * (1-u)^(H-r)
    double c = 1.0;
    for (int i = 1; i <= r - 1; ++i) c = c * (H - i) / i;
    return H * c * std::pow(u, r - 1) * std::pow(omu, H - r);
}

inline double quantile_uv(const Distribution& dist, double u, double omu) {
    return u <= 0.5 ? dist.quantile(u) : dist.quantile_tail(omu);
}

inline double delta_from(const std::vector<double>& mu_r, double mu, double sigma2) {
    if (mu_r.size() < 2) return 0.0;  // a single stratum has no between-strata spread
    if (!(sigma2 > 0)) return 0.0;
    double ss = 0.0;
    for (double m : mu_r) ss += (m - mu) * (m - mu);
    return ss / (static_cast<double>(mu_r.size()) * sigma2);
}

}  // namespace detail

inline StratumMoments stratum_moments(const Distribution& dist, const GFunction& g, int H) {
    if (H < 1) throw std::invalid_argument("stratum_moments: H must be >= 1");
    if (!g.second_moment_exists(dist)) {
        throw std::domain_error("stratum_moments: second moment of g(X) does not exist under " +
                                dist.name());
    }
    StratumMoments sm;
    sm.H = H;
    sm.mu_r.resize(static_cast<std::size_t>(H));
    sm.sigma2_r.resize(static_cast<std::size_t>(H));

    if (g.kind() == GFunction::Kind::Indicator) {
        // exact: no integration across the jump
        double F = dist.cdf(g.threshold());
        auto Fr = stratum_cdfs(dist, H, g.threshold());
        for (int r = 0; r < H; ++r) {
            sm.mu_r[static_cast<std::size_t>(r)] = Fr[static_cast<std::size_t>(r)];
            sm.sigma2_r[static_cast<std::size_t>(r)] =
                Fr[static_cast<std::size_t>(r)] * (1.0 - Fr[static_cast<std::size_t>(r)]);
        }
        sm.mu_g = F;
        sm.sigma2_g = F * (1.0 - F);
        sm.delta_g = detail::delta_from(sm.mu_r, sm.mu_g, sm.sigma2_g);
        return sm;
    }

    for (int r = 1; r <= H; ++r) {
        double m1 = integrate01([&](double u, double omu) {
            return g(detail::quantile_uv(dist, u, omu)) * detail::beta_weight(H, r, u, omu);
        });
        double m2 = integrate01([&](double u, double omu) {
            double gv = g(detail::quantile_uv(dist, u, omu));
            return gv * gv * detail::beta_weight(H, r, u, omu);
        });
        sm.mu_r[static_cast<std::size_t>(r - 1)] = m1;
        sm.sigma2_r[static_cast<std::size_t>(r - 1)] = m2 - m1 * m1;
    }

    bool plain_x = g.kind() == GFunction::Kind::Identity ||
                   (g.kind() == GFunction::Kind::Power && g.exponent() == 1);
    if (plain_x) {
        sm.mu_g = dist.mean();
        sm.sigma2_g = dist.variance();
    } else {
        double m1 = integrate01(
            [&](double u, double omu) { return g(detail::quantile_uv(dist, u, omu)); });
        double m2 = integrate01([&](double u, double omu) {
            double gv = g(detail::quantile_uv(dist, u, omu));
            return gv * gv;
        });
        sm.mu_g = m1;
        sm.sigma2_g = m2 - m1 * m1;
    }
    sm.delta_g = detail::delta_from(sm.mu_r, sm.mu_g, sm.sigma2_g);
    return sm;
}

// Heterogeneity ratio for the plain mean target; the quantity every
// efficiency formula depends on.
inline double delta_identity(const Distribution& dist, int H) {
    return stratum_moments(dist, GFunction::identity(), H).delta_g;
}

enum class RankBy { X, Y };

struct YRankMcOptions {
    std::uint64_t reps = 10'000'000;
    std::uint64_t seed = 20240801;
};

// Moments when ranking is done on Y = g(X) itself rather than on X.  For
// monotone g the two rankings induce the same strata (up to reversal); for
// non-monotone g the law of Y_(r) has no usable quantile transform, so the
// moments are estimated by Monte Carlo over ranking classes.
inline StratumMoments transformed_stratum_moments(const Distribution& dist, const GFunction& g,
                                                  int H, RankBy rank_by,
                                                  const YRankMcOptions& opt = {}) {
    if (rank_by == RankBy::X) return stratum_moments(dist, g, H);
    Monotonicity mono = g.monotonicity_on(dist);
    if (mono == Monotonicity::Increasing) return stratum_moments(dist, g, H);
    if (mono == Monotonicity::Decreasing) {
        StratumMoments sm = stratum_moments(dist, g, H);
        std::reverse(sm.mu_r.begin(), sm.mu_r.end());
        std::reverse(sm.sigma2_r.begin(), sm.sigma2_r.end());
        return sm;
    }
    // Monte Carlo over i.i.d. ranking classes of size H
    StratumMoments sm;
    sm.H = H;
    const auto Hs = static_cast<std::size_t>(H);
    std::vector<double> sum(Hs, 0.0), sumsq(Hs, 0.0);
    double tot = 0.0, totsq = 0.0;
    std::vector<double> y(Hs);
    CounterRng rng(opt.seed, 0x79);
    for (std::uint64_t rep = 0; rep < opt.reps; ++rep) {
        for (auto& v : y) v = g(dist.quantile(rng.u01()));
        std::sort(y.begin(), y.end());
        for (std::size_t r = 0; r < Hs; ++r) {
            sum[r] += y[r];
            sumsq[r] += y[r] * y[r];
            tot += y[r];
            totsq += y[r] * y[r];
        }
    }
    const double n = static_cast<double>(opt.reps);
    sm.mu_r.resize(Hs);
    sm.sigma2_r.resize(Hs);
    sm.mc_se_mu_r.resize(Hs);
    for (std::size_t r = 0; r < Hs; ++r) {
        sm.mu_r[r] = sum[r] / n;
        sm.sigma2_r[r] = sumsq[r] / n - sm.mu_r[r] * sm.mu_r[r];
        sm.mc_se_mu_r[r] = std::sqrt(std::max(0.0, sm.sigma2_r[r]) / n);
    }
    sm.mu_g = tot / (n * H);
    sm.sigma2_g = totsq / (n * H) - sm.mu_g * sm.mu_g;
    sm.delta_g = detail::delta_from(sm.mu_r, sm.mu_g, sm.sigma2_g);
    return sm;
}

}  // namespace jps

#endif  // JPSTRAT_STRATA_HPP
