#ifndef JPSTRAT_QUADRATURE_HPP
#define JPSTRAT_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace jps {

// Integrands on (0,1) receive both u and 1-u so quantile transforms stay
// accurate in the upper tail, where forming 1-u in the caller would round.
using Integrand01 = std::function<double(double u, double one_minus_u)>;

namespace quad {

// 16-point Gauss-Legendre on [-1,1]: positive half of the symmetric rule.
inline constexpr double kGlNode[8] = {
    0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863, 0.6178762444026437484,
    0.7554044083550030339, 0.8656312023878317439, 0.9445750230732325761, 0.9894009349916499326,
};
inline constexpr double kGlWeight[8] = {
    0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382, 0.1495959888165767320,
    0.1246289712555338720, 0.0951585116824927848, 0.0622535239386478929, 0.0271524594117540949,
};

inline double gl16(const Integrand01& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        double d = half * kGlNode[i];
        double x1 = mid - d, x2 = mid + d;
        s += kGlWeight[i] * (f(x1, 1.0 - x1) + f(x2, 1.0 - x2));
    }
    return s * half;
}

inline void gl_adaptive(const Integrand01& f, double a, double b, double whole, double tol_abs,
                        double tol_rel, int depth, double& acc) {
    double mid = 0.5 * (a + b);
    double left = gl16(f, a, mid), right = gl16(f, mid, b);
    double refined = left + right;
    double delta = refined - whole;
    // relative acceptance keeps panels at rounding-noise level from splitting forever
    if (depth >= 13 || std::abs(delta) <= tol_abs + tol_rel * std::abs(refined)) {
        acc += refined;
        return;
    }
    gl_adaptive(f, a, mid, left, 0.5 * tol_abs, tol_rel, depth + 1, acc);
    gl_adaptive(f, mid, b, right, 0.5 * tol_abs, tol_rel, depth + 1, acc);
}

// tanh-sinh rule on a panel that touches u=0 (touch_left) or u=1.  Offsets
// from the touched endpoint come straight from exp terms, never from a
// subtraction, which resolves integrable quantile singularities at the ends.
inline double tanh_sinh_endpoint(const Integrand01& f, double width, bool touch_left,
                                 double tol_rel) {
    constexpr double kPiHalf = 1.5707963267948966;
    constexpr double kTmax = 4.3;
    const double half = 0.5 * width;

    auto node_sum = [&](double t) {
        // node pair at +t and -t; s = (pi/2) sinh t
        double s = kPiHalf * std::sinh(t);
        double w = kPiHalf * std::cosh(t);
        double e2s = std::exp(2.0 * s);
        double off_hi = 2.0 * half / (1.0 + e2s);        // from panel end nearer the touched endpoint? no: from +1 side
        double off_lo = 2.0 * half * e2s / (1.0 + e2s);  // complement: off_lo + off_hi = width
        double sech2 = 4.0 * e2s / ((1.0 + e2s) * (1.0 + e2s));
        double wt = w * sech2 * half;
        // node at +t sits at distance off_hi from the upper panel edge,
        // node at -t at distance off_hi from the lower panel edge.
        double total = 0.0;
        if (touch_left) {
            // panel [0, width]: node(-t) offset from 0 is off_hi; node(+t) is at off_lo
            if (off_hi > 0.0) total += wt * f(off_hi, 1.0 - off_hi);
            if (t > 0.0 && off_lo > 0.0) total += wt * f(off_lo, 1.0 - off_lo);
        } else {
            // panel [1-width, 1]: node(+t) offset from 1 is off_hi; node(-t) is at off_lo
            if (off_hi > 0.0) total += wt * f(1.0 - off_hi, off_hi);
            if (t > 0.0 && off_lo > 0.0) total += wt * f(1.0 - off_lo, off_lo);
        }
        return total;
    };

    double h = 1.0;
    double sum = node_sum(0.0);
    for (double t = h; t <= kTmax; t += h) sum += node_sum(t);
    double prev = sum * h;
    for (int level = 1; level <= 11; ++level) {
        h *= 0.5;
        for (double t = h; t <= kTmax; t += 2.0 * h) sum += node_sum(t);
        double cur = sum * h;
        if (level >= 3 && std::abs(cur - prev) <= tol_rel * std::abs(cur) + 1e-300) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace quad

// Integral of f over (0,1): tanh-sinh slices at both ends, adaptive
// Gauss-Legendre bisection in the middle, refined until successive estimates
// agree to tol_rel.
inline double integrate01(const Integrand01& f, double tol_rel = 1e-11) {
    constexpr double kEdge = 1.0 / 64.0;
    double left = quad::tanh_sinh_endpoint(f, kEdge, true, tol_rel);
    double right = quad::tanh_sinh_endpoint(f, kEdge, false, tol_rel);
    double mid0 = quad::gl16(f, kEdge, 1.0 - kEdge);
    double scale = std::abs(left) + std::abs(right) + std::abs(mid0);
    double tol_abs = tol_rel * (scale > 0 ? scale : 1.0);
    double mid = 0.0;
    quad::gl_adaptive(f, kEdge, 1.0 - kEdge, mid0, tol_abs, tol_rel, 0, mid);
    return left + mid + right;
}

}  // namespace jps

#endif  // JPSTRAT_QUADRATURE_HPP
