#ifndef JPSTRAT_COEFFS_HPP
#define JPSTRAT_COEFFS_HPP

#include <jpstrat/parallel.hpp>
#include <jpstrat/rational.hpp>
#include <jpstrat/rng.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jps {

enum class WeightScheme { Srs, StandardJps, FreyFeeman };

inline std::string scheme_name(WeightScheme s) {
    switch (s) {
        case WeightScheme::Srs: return "srs";
        case WeightScheme::StandardJps: return "jps";
        case WeightScheme::FreyFeeman: return "ff";
    }
    return "?";
}

inline WeightScheme parse_scheme(const std::string& s) {
    if (s == "srs") return WeightScheme::Srs;
    if (s == "jps") return WeightScheme::StandardJps;
    if (s == "ff") return WeightScheme::FreyFeeman;
    throw std::invalid_argument("unknown weight scheme: '" + s + "'");
}

enum class Exactness { ClosedForm, Enumerated, MonteCarlo };

// Scheme moments that drive every variance and efficiency formula.
// k1 = H E(J1 C1^2), k2 = H^2/(H-1) V(C1); m1 = n k1, m2 = n k2.
struct CoefficientSet {
    WeightScheme scheme = WeightScheme::StandardJps;
    int n = 1;
    int H = 1;
    double e_c1 = 1.0;
    double v_c1 = 0.0;
    double cov_c1c2 = 0.0;
    double e_j1c1sq = 1.0;
    double m1 = 1.0, m2 = 0.0, k1 = 1.0, k2 = 0.0;
    Exactness exactness = Exactness::ClosedForm;
    double se_v_c1 = 0.0;      // MonteCarlo only
    double se_e_j1c1sq = 0.0;  // MonteCarlo only
};

namespace detail {

inline void check_nh(int n, int H) {
    if (n < 1 || H < 1) throw std::invalid_argument("coefficients: need n >= 1 and H >= 1");
}

inline BigInt lcm_upto(int n) {
    BigInt l(1);
    for (int k = 2; k <= n; ++k) {
        BigInt kb(k);
        l = l * (kb / BigInt::gcd(l, kb));
    }
    return l;
}

}  // namespace detail

// P(I_1/h_n = v) over v in {0} u {1/k : k = 1..H}, exact.
// Returned as (value, probability) pairs, zero atom first.
inline std::vector<std::pair<Rational, Rational>> std_inv_hn_pmf(int n, int H) {
    detail::check_nh(n, H);
    std::vector<std::pair<Rational, Rational>> pmf;
    BigInt hn = BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n));
    pmf.emplace_back(Rational(0),
                     Rational(BigInt::pow(BigInt(H - 1), static_cast<std::uint64_t>(n)), hn));
    for (int k = 1; k <= H; ++k) {
        // number of ways n observations occupy exactly strata 1..k, stratum 1 nonempty included
        BigInt surj(0);
        for (int j = 1; j <= k; ++j) {
            BigInt term = binomial_big(static_cast<unsigned>(k), static_cast<unsigned>(j - 1)) *
                          BigInt::pow(BigInt(k - j + 1), static_cast<std::uint64_t>(n));
            surj = (j % 2 == 1) ? surj + term : surj - term;
        }
        BigInt ways = binomial_big(static_cast<unsigned>(H - 1), static_cast<unsigned>(k - 1)) * surj;
        pmf.emplace_back(Rational(1, k), Rational(ways, hn));
    }
    return pmf;
}

// V(I_1/h_n) = (1/H^2) sum_{k=1}^{H-1} (k/H)^(n-1), exact.
inline Rational std_v_coeff(int n, int H) {
    detail::check_nh(n, H);
    if (H == 1) return Rational(0);
    BigInt num(0);
    for (int k = 1; k <= H - 1; ++k) num += BigInt::pow(BigInt(k), static_cast<std::uint64_t>(n - 1));
    return Rational(num, BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n + 1)));
}

// E(J_1/h_n^2), exact: the inclusion-exclusion triple sum aggregated per
// occupied-strata count with a fixed lcm denominator, so the inner loops are
// integer-only.
inline Rational std_j_coeff(int n, int H) {
    detail::check_nh(n, H);
    if (H == 1) return Rational(1, n);
    const BigInt L = detail::lcm_upto(n);
    std::vector<BigInt> l_over(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) l_over[static_cast<std::size_t>(k)] = L / BigInt(k);
    std::vector<BigInt> binom_n(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        binom_n[static_cast<std::size_t>(k)] = binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k));
    // powers[b][e] = b^e for b = 1..H-1, e = 0..n-1
    std::vector<std::vector<BigInt>> powers(static_cast<std::size_t>(H));
    for (int b = 1; b <= H - 1; ++b) {
        auto& row = powers[static_cast<std::size_t>(b)];
        row.resize(static_cast<std::size_t>(n));
        row[0] = BigInt(1);
        for (int e = 1; e < n; ++e) row[static_cast<std::size_t>(e)] = row[static_cast<std::size_t>(e - 1)] * BigInt(b);
    }

    Rational total(1, n);
    for (int h = 2; h <= H; ++h) {
        if (n < h) break;  // cannot occupy h strata with fewer observations
        BigInt uh(0);
        for (int j = 1; j <= h - 1; ++j) {
            const auto& pw = powers[static_cast<std::size_t>(h - j)];
            BigInt inner(0);
            for (int n1 = 1; n1 <= n - h + 1; ++n1) {
                inner += binom_n[static_cast<std::size_t>(n1)] * pw[static_cast<std::size_t>(n - n1)] *
                         l_over[static_cast<std::size_t>(n1)];
            }
            BigInt term = binomial_big(static_cast<unsigned>(h - 1), static_cast<unsigned>(j - 1)) * inner;
            uh = (j % 2 == 1) ? uh + term : uh - term;
        }
        BigInt num = binomial_big(static_cast<unsigned>(H - 1), static_cast<unsigned>(h - 1)) * uh;
        total += Rational(num, BigInt(static_cast<std::int64_t>(h) * h) * L);
    }
    return total / Rational(BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n)), BigInt(1));
}

// Floating-point re-evaluation of the same alternating sum; cancellation guard
// for any future fast path.
inline double std_j_coeff_fp(int n, int H) {
    detail::check_nh(n, H);
    if (H == 1) return 1.0 / n;
    std::vector<double> lf(static_cast<std::size_t>(std::max(n, H)) + 1, 0.0);
    for (std::size_t k = 2; k < lf.size(); ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    auto lbinom = [&](int a, int b) { return lf[static_cast<std::size_t>(a)] - lf[static_cast<std::size_t>(b)] - lf[static_cast<std::size_t>(a - b)]; };
    const double lnH = std::log(static_cast<double>(H));
    double total = 1.0 / n * std::exp(-n * lnH);
    for (int h = 2; h <= H && h <= n; ++h) {
        for (int j = 1; j <= h - 1; ++j) {
            double sgn = (j % 2 == 1) ? 1.0 : -1.0;
            for (int n1 = 1; n1 <= n - h + 1; ++n1) {
                double lt = lbinom(H - 1, h - 1) + lbinom(h - 1, j - 1) + lbinom(n, n1) +
                            (n - n1) * std::log(static_cast<double>(h - j)) - n * lnH -
                            std::log(static_cast<double>(h) * h * n1);
                total += sgn * std::exp(lt);
            }
        }
    }
    return total;
}

// Numerically stable large-n route: occupancy Markov chain over the other
// H-1 strata plus a binomial over N_1.  Returns (E(J1/hn^2), V(I1/hn)).
inline std::pair<double, double> std_coeffs_occupancy(int n, int H) {
    detail::check_nh(n, H);
    if (H == 1) return {1.0 / n, 0.0};
    const int s = H - 1;
    // occ[m][j] = P(j of s cells occupied after m balls), rolled forward
    std::vector<std::vector<double>> occ(static_cast<std::size_t>(n) + 1,
                                         std::vector<double>(static_cast<std::size_t>(s) + 1, 0.0));
    occ[0][0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        for (int j = 0; j <= s; ++j) {
            double stay = occ[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j)] *
                          (static_cast<double>(j) / s);
            double grow = (j > 0) ? occ[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)] *
                                        (1.0 - static_cast<double>(j - 1) / s)
                                  : 0.0;
            occ[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = stay + grow;
        }
    }
    // binomial weights over N_1 via stable recurrence
    const double p = 1.0 / H;
    double e = 0.0;
    double logw = n * std::log1p(-p);  // P(N1 = 0)
    for (int n1 = 1; n1 <= n; ++n1) {
        logw += std::log(static_cast<double>(n - n1 + 1)) - std::log(static_cast<double>(n1)) +
                std::log(p) - std::log1p(-p);
        double w = std::exp(logw);
        if (w == 0.0) continue;
        const auto& row = occ[static_cast<std::size_t>(n - n1)];
        double inner = 0.0;
        for (int j = 0; j <= s; ++j) {
            double hn = 1.0 + j;
            inner += row[static_cast<std::size_t>(j)] / (hn * hn);
        }
        e += w / n1 * inner;
    }
    double v = 0.0;
    for (int k = 1; k <= H - 1; ++k) v += std::pow(static_cast<double>(k) / H, n - 1);
    v /= static_cast<double>(H) * H;
    return {e, v};
}

// ---------------------------------------------------------------------------
// composition enumeration

inline BigInt composition_count(int n, int H) {
    return binomial_big(static_cast<unsigned>(n + H - 1), static_cast<unsigned>(H - 1));
}

inline constexpr std::int64_t kEnumBudget = 2'000'000;

// Visits every composition of n into H nonnegative parts.
template <class Visit>
void for_each_composition(int n, int H, Visit&& visit) {
    std::vector<int> c(static_cast<std::size_t>(H), 0);
    c[0] = n;
    for (;;) {
        visit(static_cast<const std::vector<int>&>(c));
        if (c[static_cast<std::size_t>(H - 1)] == n) break;
        int i = 0;
        while (c[static_cast<std::size_t>(i)] == 0) ++i;
        int ci = c[static_cast<std::size_t>(i)];
        c[static_cast<std::size_t>(i)] = 0;
        c[0] = ci - 1;
        ++c[static_cast<std::size_t>(i + 1)];
    }
}

// Same walk carrying the multinomial coefficient, updated in O(1) per step:
// moving the leading block turns n!/prod c_r! into itself * c_i / (c_{i+1}+1).
template <class Visit>
void for_each_composition_weighted(int n, int H, Visit&& visit) {
    std::vector<int> c(static_cast<std::size_t>(H), 0);
    c[0] = n;
    BigInt coef(1);
    for (;;) {
        visit(static_cast<const std::vector<int>&>(c), coef);
        if (c[static_cast<std::size_t>(H - 1)] == n) break;
        int i = 0;
        while (c[static_cast<std::size_t>(i)] == 0) ++i;
        int ci = c[static_cast<std::size_t>(i)];
        int v = c[static_cast<std::size_t>(i + 1)];
        coef = (coef * BigInt(ci)) / BigInt(v + 1);
        c[static_cast<std::size_t>(i)] = 0;
        c[0] = ci - 1;
        ++c[static_cast<std::size_t>(i + 1)];
    }
}

enum class CoeffFunctional { VC1, EJ1C1Sq };

namespace detail {

inline Rational weight1_exact(WeightScheme s, const std::vector<int>& c, int n, int H) {
    if (c[0] == 0) return Rational(0);
    switch (s) {
        case WeightScheme::Srs: return Rational(c[0], n);
        case WeightScheme::StandardJps: {
            int h = 0;
            for (int v : c) h += (v > 0);
            return Rational(1, h);
        }
        case WeightScheme::FreyFeeman: {
            Rational a1(c[0], static_cast<std::int64_t>(H) * c[0] + 2);
            Rational asum(0);
            for (int v : c) {
                if (v > 0) asum += Rational(v, static_cast<std::int64_t>(H) * v + 2);
            }
            return a1 / asum;
        }
    }
    return Rational(0);
}

}  // namespace detail

// Exhaustive multinomial expectation, exact rational arithmetic throughout.
// Independent of every closed form above: weights are evaluated from their
// definitions per count vector, probabilities from factorials.
inline Rational enumerate_oracle(WeightScheme scheme, int n, int H, CoeffFunctional functional) {
    detail::check_nh(n, H);
    if (composition_count(n, H) > BigInt(kEnumBudget)) {
        throw std::domain_error("enumerate_oracle: composition count exceeds budget, use Monte Carlo");
    }
    std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1);
    fact[0] = BigInt(1);
    for (int k = 1; k <= n; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * BigInt(k);
    const BigInt hn = BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n));

    Rational acc_e1(0), acc_e2(0), acc_j(0);
    for_each_composition(n, H, [&](const std::vector<int>& c) {
        BigInt ways = fact[static_cast<std::size_t>(n)];
        for (int v : c) ways = ways / fact[static_cast<std::size_t>(v)];
        Rational prob(ways, hn);
        Rational c1 = detail::weight1_exact(scheme, c, n, H);
        if (functional == CoeffFunctional::VC1) {
            acc_e1 += prob * c1;
            acc_e2 += prob * c1 * c1;
        } else if (c[0] > 0) {
            acc_j += prob * c1 * c1 * Rational(1, c[0]);
        }
    });
    if (functional == CoeffFunctional::VC1) return acc_e2 - acc_e1 * acc_e1;
    return acc_j;
}

// Oracle for the occupancy pmf: same enumeration engine, different functional.
inline std::vector<std::pair<Rational, Rational>> enumerate_inv_hn_pmf(int n, int H) {
    detail::check_nh(n, H);
    if (composition_count(n, H) > BigInt(kEnumBudget)) {
        throw std::domain_error("enumerate_inv_hn_pmf: composition count exceeds budget");
    }
    std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1);
    fact[0] = BigInt(1);
    for (int k = 1; k <= n; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * BigInt(k);
    const BigInt hn = BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n));
    std::vector<Rational> prob(static_cast<std::size_t>(H) + 1, Rational(0));  // index k: I1/hn = 1/k; index 0: atom at 0
    for_each_composition(n, H, [&](const std::vector<int>& c) {
        BigInt ways = fact[static_cast<std::size_t>(n)];
        for (int v : c) ways = ways / fact[static_cast<std::size_t>(v)];
        Rational p(ways, hn);
        if (c[0] == 0) {
            prob[0] += p;
        } else {
            int h = 0;
            for (int v : c) h += (v > 0);
            prob[static_cast<std::size_t>(h)] += p;
        }
    });
    std::vector<std::pair<Rational, Rational>> out;
    out.emplace_back(Rational(0), prob[0]);
    for (int k = 1; k <= H; ++k) out.emplace_back(Rational(1, k), prob[static_cast<std::size_t>(k)]);
    return out;
}

// ---------------------------------------------------------------------------
// Frey-Feeman weight moments: no closed form, so enumeration (exact rationals
// at small sizes, floating enumeration within the budget) or Monte Carlo.

struct FfMoments {
    double v_a1 = 0.0;
    double e_j1a1sq = 0.0;
    Exactness exactness = Exactness::Enumerated;
    double se_v_a1 = 0.0;
    double se_e_j1a1sq = 0.0;
};

struct FfMcOptions {
    std::uint64_t reps = 10'000'000;
    std::uint64_t seed = 20240801;
    int threads = 1;
};

namespace detail {

}  // namespace detail

// Exact rational Frey-Feeman moments (V(A1), E(J1 A1^2)); the walk carries an
// incrementally updated multinomial coefficient, unlike the oracle's
// factorial-recompute route.
inline std::pair<Rational, Rational> ff_moments_exact_rational(int n, int H) {
    detail::check_nh(n, H);
    Rational e2(0), ej(0);
    const BigInt hn = BigInt::pow(BigInt(H), static_cast<std::uint64_t>(n));
    for_each_composition_weighted(n, H, [&](const std::vector<int>& c, const BigInt& coef) {
        if (c[0] == 0) return;
        Rational p(coef, hn);
        Rational a1 = detail::weight1_exact(WeightScheme::FreyFeeman, c, n, H);
        e2 += p * a1 * a1;
        ej += p * a1 * a1 * Rational(1, c[0]);
    });
    return {e2 - Rational(1, static_cast<std::int64_t>(H) * H), ej};
}

namespace detail {

// exact rational path, practical only for small composition counts
inline FfMoments ff_enumerate_exact(int n, int H) {
    auto [v, ej] = ff_moments_exact_rational(n, H);
    FfMoments out;
    out.v_a1 = v.to_double();
    out.e_j1a1sq = ej.to_double();
    out.exactness = Exactness::Enumerated;
    return out;
}

inline FfMoments ff_enumerate_fp(int n, int H) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t k = 2; k < lf.size(); ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    const double lnH = std::log(static_cast<double>(H));
    double e2 = 0.0, ej = 0.0;
    std::vector<double> a(static_cast<std::size_t>(H));
    for_each_composition(n, H, [&](const std::vector<int>& c) {
        if (c[0] == 0) return;
        double lp = lf[static_cast<std::size_t>(n)] - n * lnH;
        for (int v : c) lp -= lf[static_cast<std::size_t>(v)];
        double p = std::exp(lp);
        double asum = 0.0;
        for (int r = 0; r < H; ++r) {
            double ar = (c[static_cast<std::size_t>(r)] > 0)
                            ? static_cast<double>(c[static_cast<std::size_t>(r)]) /
                                  (static_cast<double>(H) * c[static_cast<std::size_t>(r)] + 2.0)
                            : 0.0;
            a[static_cast<std::size_t>(r)] = ar;
            asum += ar;
        }
        double a1 = a[0] / asum;
        e2 += p * a1 * a1;
        ej += p * a1 * a1 / c[0];
    });
    FfMoments out;
    out.v_a1 = e2 - 1.0 / (static_cast<double>(H) * H);
    out.e_j1a1sq = ej;
    out.exactness = Exactness::Enumerated;
    return out;
}

inline FfMoments ff_monte_carlo(int n, int H, const FfMcOptions& opt) {
    // accumulate A1, A1^2, J1 A1^2 and their squares for standard errors
    auto totals = parallel_accumulate<5>(opt.reps, opt.threads, [&](std::uint64_t rep, std::array<double, 5>& acc) {
        CounterRng rng(opt.seed, rep);
        thread_local std::vector<int> counts;
        counts.assign(static_cast<std::size_t>(H), 0);
        for (int i = 0; i < n; ++i) {
            auto r = static_cast<std::size_t>(rng.u01() * H);
            if (r >= static_cast<std::size_t>(H)) r = static_cast<std::size_t>(H - 1);
            ++counts[r];
        }
        double asum = 0.0, a1 = 0.0;
        for (int r = 0; r < H; ++r) {
            int c = counts[static_cast<std::size_t>(r)];
            double ar = c > 0 ? static_cast<double>(c) / (static_cast<double>(H) * c + 2.0) : 0.0;
            if (r == 0) a1 = ar;
            asum += ar;
        }
        double w = a1 / asum;
        double w2 = w * w;
        double j = counts[0] > 0 ? w2 / counts[0] : 0.0;
        acc = {w, w2, j, w2 * w2, j * j};
    });
    const double R = static_cast<double>(opt.reps);
    double m1 = totals[0] / R, m2 = totals[1] / R, mj = totals[2] / R;
    double m4 = totals[3] / R, mj2 = totals[4] / R;
    FfMoments out;
    out.v_a1 = m2 - m1 * m1;
    out.e_j1a1sq = mj;
    out.exactness = Exactness::MonteCarlo;
    // delta-method SE for V(A1) ~= SE of E[A1^2] (the mean term contributes
    // an order of magnitude less here); reported for band checks only
    out.se_v_a1 = std::sqrt(std::max(0.0, m4 - m2 * m2) / R);
    out.se_e_j1a1sq = std::sqrt(std::max(0.0, mj2 - mj * mj) / R);
    return out;
}

}  // namespace detail

enum class FfMethod { Enumerate, MonteCarlo };

// Exact rationals above this composition count hit quadratic gcd growth in
// the accumulators; the float path is exact to rounding and takes microseconds.
inline constexpr std::int64_t kFfExactLimit = 400;

inline FfMoments ff_weight_moments(int n, int H, FfMethod method, const FfMcOptions& opt = {}) {
    detail::check_nh(n, H);
    if (H == 1) {
        FfMoments out;
        out.v_a1 = 0.0;
        out.e_j1a1sq = 1.0 / n;
        out.exactness = Exactness::Enumerated;
        return out;
    }
    if (method == FfMethod::Enumerate) {
        BigInt count = composition_count(n, H);
        if (count > BigInt(kEnumBudget)) {
            throw std::domain_error(
                "ff_weight_moments: composition count exceeds enumeration budget; use MonteCarlo");
        }
        if (count <= BigInt(kFfExactLimit)) return detail::ff_enumerate_exact(n, H);
        return detail::ff_enumerate_fp(n, H);
    }
    return detail::ff_monte_carlo(n, H, opt);
}

// ---------------------------------------------------------------------------

struct CoeffOptions {
    FfMethod ff_method = FfMethod::Enumerate;
    FfMcOptions mc = {};
    int std_exact_n_limit = 200;  // above: stable occupancy evaluation
};

inline CoefficientSet coefficient_set(WeightScheme scheme, int n, int H,
                                      const CoeffOptions& opt = {}) {
    detail::check_nh(n, H);
    CoefficientSet cs;
    cs.scheme = scheme;
    cs.n = n;
    cs.H = H;
    cs.e_c1 = 1.0 / H;

    if (H == 1) {
        cs.v_c1 = 0.0;
        cs.e_j1c1sq = 1.0 / n;
    } else {
        switch (scheme) {
            case WeightScheme::Srs:
                cs.v_c1 = Rational(H - 1, static_cast<std::int64_t>(n) * H * H).to_double();
                cs.e_j1c1sq = Rational(1, static_cast<std::int64_t>(n) * H).to_double();
                break;
            case WeightScheme::StandardJps:
                if (n <= opt.std_exact_n_limit) {
                    cs.v_c1 = std_v_coeff(n, H).to_double();
                    cs.e_j1c1sq = std_j_coeff(n, H).to_double();
                } else {
                    auto [e, v] = std_coeffs_occupancy(n, H);
                    cs.e_j1c1sq = e;
                    cs.v_c1 = v;
                }
                break;
            case WeightScheme::FreyFeeman: {
                FfMoments fm = ff_weight_moments(n, H, opt.ff_method, opt.mc);
                cs.v_c1 = fm.v_a1;
                cs.e_j1c1sq = fm.e_j1a1sq;
                cs.exactness = fm.exactness;
                cs.se_v_c1 = fm.se_v_a1;
                cs.se_e_j1c1sq = fm.se_e_j1a1sq;
                break;
            }
        }
    }
    cs.cov_c1c2 = (H > 1) ? -cs.v_c1 / (H - 1) : 0.0;
    cs.k1 = H * cs.e_j1c1sq;
    cs.k2 = (H > 1) ? static_cast<double>(H) * H / (H - 1) * cs.v_c1 : 0.0;
    cs.m1 = (H == 1) ? 1.0 : n * cs.k1;  // H=1 is SRS exactly
    cs.m2 = n * cs.k2;
    return cs;
}

}  // namespace jps

#endif  // JPSTRAT_COEFFS_HPP
