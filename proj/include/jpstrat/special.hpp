#ifndef JPSTRAT_SPECIAL_HPP
#define JPSTRAT_SPECIAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jps {

inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

inline double normal_pdf(double z) {
    return 0.3989422804014326779 * std::exp(-0.5 * z * z);
}

// Inverse standard normal CDF: Acklam's rational approximation refined by a
// Halley step on erfc, good to ~1 ulp over (0,1).
inline double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile: u outside (0,1)");
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (u < plow) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        double q = u - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (std::abs(x) < 37.0) {  // beyond, exp(x^2/2) overflows and the seed is already fine
        double e = normal_cdf(x) - u;
        double w = e * 2.5066282746310002 * std::exp(0.5 * x * x);  // e / pdf(x)
        x -= w / (1.0 + 0.5 * x * w);
    }
    return x;
}

namespace detail {

inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16, kFpMin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double cc = 1.0, dd = 1.0 - qab * x / qap;
    if (std::abs(dd) < kFpMin) dd = kFpMin;
    dd = 1.0 / dd;
    double h = dd;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        dd = 1.0 + aa * dd;
        if (std::abs(dd) < kFpMin) dd = kFpMin;
        cc = 1.0 + aa / cc;
        if (std::abs(cc) < kFpMin) cc = kFpMin;
        dd = 1.0 / dd;
        h *= dd * cc;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        dd = 1.0 + aa * dd;
        if (std::abs(dd) < kFpMin) dd = kFpMin;
        cc = 1.0 + aa / cc;
        if (std::abs(cc) < kFpMin) cc = kFpMin;
        dd = 1.0 / dd;
        double del = dd * cc;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    return h;  // converged enough for double purposes in practice
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double ibeta_reg(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lnfront = a * std::log(x) + b * std::log1p(-x) -
                     (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    double front = std::exp(lnfront);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * detail::betacf(a, b, x) / a;
    }
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// Regularized lower incomplete gamma P(a, x).
inline double igamma_lower_reg(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {  // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a,x), Lentz
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - a, cc = 1.0 / kFpMin, dd = 1.0 / b, h = dd;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        dd = an * dd + b;
        if (std::abs(dd) < kFpMin) dd = kFpMin;
        cc = b + an / cc;
        if (std::abs(cc) < kFpMin) cc = kFpMin;
        dd = 1.0 / dd;
        double del = dd * cc;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    double q = h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - q;
}

inline double igamma_upper_reg(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x >= a + 1.0) {
        constexpr double kFpMin = 1e-300;
        double b = x + 1.0 - a, cc = 1.0 / kFpMin, dd = 1.0 / b, h = dd;
        for (int i = 1; i <= 500; ++i) {
            double an = -i * (i - a);
            b += 2.0;
            dd = an * dd + b;
            if (std::abs(dd) < kFpMin) dd = kFpMin;
            cc = b + an / cc;
            if (std::abs(cc) < kFpMin) cc = kFpMin;
            dd = 1.0 / dd;
            double del = dd * cc;
            h *= del;
            if (std::abs(del - 1.0) < 1e-16) break;
        }
        return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    return 1.0 - igamma_lower_reg(a, x);
}

// Monotone-CDF inverter: safeguarded Newton inside a bracket, falling back to
// bisection whenever a step escapes or stalls.  cdf must be nondecreasing.
template <typename Cdf, typename Pdf>
double invert_cdf(const Cdf& cdf, const Pdf& pdf, double u, double lo, double hi, double x0) {
    constexpr double kAbsTol = 1e-12;
    double x = std::clamp(x0, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double f = cdf(x) - u;
        if (f > 0) hi = x;
        else lo = x;
        double dfdx = pdf(x);
        double step = (dfdx > 0) ? f / dfdx : std::numeric_limits<double>::infinity();
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // bisect
        if (std::abs(xn - x) <= kAbsTol * std::max(1.0, std::abs(xn)) && it > 2) return xn;
        x = xn;
        if (hi - lo <= kAbsTol * std::max(1.0, std::abs(x))) return x;
    }
    return x;
}

}  // namespace jps

#endif  // JPSTRAT_SPECIAL_HPP
