#ifndef JPSTRAT_DISTRIBUTIONS_HPP
#define JPSTRAT_DISTRIBUTIONS_HPP

#include <jpstrat/special.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace jps {

enum class Family { Normal, StudentT, Uniform, Beta, Exponential, ChiSquare, Weibull, Pareto };

// Population model: density, CDF, quantile and analytic moments.
// Immutable after construction; parameters validated at construction.
class Distribution {
public:
    static Distribution normal(double mu, double sigma) {
        if (!(sigma > 0)) throw std::invalid_argument("normal: sigma must be > 0");
        return {Family::Normal, mu, sigma};
    }
    static Distribution student_t(double df) {
        if (!(df > 0)) throw std::invalid_argument("t: df must be > 0");
        return {Family::StudentT, df, 0};
    }
    static Distribution uniform(double a, double b) {
        if (!(a < b)) throw std::invalid_argument("uniform: needs a < b");
        return {Family::Uniform, a, b};
    }
    static Distribution beta(double alpha, double betap) {
        if (!(alpha > 0 && betap > 0)) throw std::invalid_argument("beta: parameters must be > 0");
        return {Family::Beta, alpha, betap};
    }
    static Distribution exponential(double rate) {
        if (!(rate > 0)) throw std::invalid_argument("exp: rate must be > 0");
        return {Family::Exponential, rate, 0};
    }
    static Distribution chi_square(double df) {
        if (!(df > 0)) throw std::invalid_argument("chisq: df must be > 0");
        return {Family::ChiSquare, df, 0};
    }
    static Distribution weibull(double shape, double scale = 1.0) {
        if (!(shape > 0 && scale > 0)) throw std::invalid_argument("weibull: parameters must be > 0");
        return {Family::Weibull, shape, scale};
    }
    static Distribution pareto(double shape, double scale = 1.0) {
        if (!(shape > 0 && scale > 0)) throw std::invalid_argument("pareto: parameters must be > 0");
        return {Family::Pareto, shape, scale};
    }

    Family family() const { return family_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }

    double support_lo() const {
        switch (family_) {
            case Family::Normal:
            case Family::StudentT: return -std::numeric_limits<double>::infinity();
            case Family::Uniform: return p1_;
            case Family::Beta: return 0.0;
            case Family::Exponential:
            case Family::ChiSquare: return 0.0;
            case Family::Weibull: return 0.0;
            case Family::Pareto: return p2_;
        }
        return 0.0;
    }
    double support_hi() const {
        switch (family_) {
            case Family::Uniform: return p2_;
            case Family::Beta: return 1.0;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    double cdf(double x) const {
        switch (family_) {
            case Family::Normal: return normal_cdf((x - p1_) / p2_);
            case Family::StudentT: {
                if (x == 0.0) return 0.5;
                double s = t_sf(std::abs(x));
                return x > 0 ? 1.0 - s : s;
            }
            case Family::Uniform:
                if (x <= p1_) return 0.0;
                if (x >= p2_) return 1.0;
                return (x - p1_) / (p2_ - p1_);
            case Family::Beta:
                return ibeta_reg(p1_, p2_, x);
            case Family::Exponential:
                return x <= 0 ? 0.0 : -std::expm1(-p1_ * x);
            case Family::ChiSquare:
                return x <= 0 ? 0.0 : igamma_lower_reg(p1_ * 0.5, x * 0.5);
            case Family::Weibull:
                return x <= 0 ? 0.0 : -std::expm1(-std::pow(x / p2_, p1_));
            case Family::Pareto:
                return x <= p2_ ? 0.0 : 1.0 - std::pow(p2_ / x, p1_);
        }
        return 0.0;
    }

    double pdf(double x) const {
        switch (family_) {
            case Family::Normal: return normal_pdf((x - p1_) / p2_) / p2_;
            case Family::StudentT: {
                double df = p1_;
                double lc = std::lgamma(0.5 * (df + 1)) - std::lgamma(0.5 * df) -
                            0.5 * std::log(df * 3.14159265358979323846);
                return std::exp(lc - 0.5 * (df + 1) * std::log1p(x * x / df));
            }
            case Family::Uniform:
                return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
            case Family::Beta: {
                if (x <= 0 || x >= 1) return 0.0;
                double lb = std::lgamma(p1_) + std::lgamma(p2_) - std::lgamma(p1_ + p2_);
                return std::exp((p1_ - 1) * std::log(x) + (p2_ - 1) * std::log1p(-x) - lb);
            }
            case Family::Exponential:
                return x < 0 ? 0.0 : p1_ * std::exp(-p1_ * x);
            case Family::ChiSquare: {
                if (x <= 0) return 0.0;
                double a = p1_ * 0.5;
                return std::exp((a - 1) * std::log(x) - 0.5 * x - a * 0.6931471805599453 - std::lgamma(a));
            }
            case Family::Weibull: {
                if (x <= 0) return 0.0;
                double z = x / p2_;
                return (p1_ / p2_) * std::pow(z, p1_ - 1) * std::exp(-std::pow(z, p1_));
            }
            case Family::Pareto:
                return x < p2_ ? 0.0 : p1_ * std::pow(p2_, p1_) / std::pow(x, p1_ + 1);
        }
        return 0.0;
    }

    double quantile(double u) const {
        if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u outside (0,1)");
        switch (family_) {
            case Family::Normal: return p1_ + p2_ * normal_quantile(u);
            case Family::StudentT:
                if (u == 0.5) return 0.0;
                return u > 0.5 ? t_tail_quantile(1.0 - u) : -t_tail_quantile(u);
            case Family::Uniform: return p1_ + (p2_ - p1_) * u;
            case Family::Beta: return beta_quantile(u);
            case Family::Exponential: return -std::log1p(-u) / p1_;
            case Family::ChiSquare: return chisq_quantile(u);
            case Family::Weibull: return p2_ * std::pow(-std::log1p(-u), 1.0 / p1_);
            case Family::Pareto: return p2_ * std::pow(1.0 - u, -1.0 / p1_);
        }
        return 0.0;
    }

    // Upper-tail quantile: returns Q(1 - q) with the tail probability passed
    // exactly, so heavy-tail integrands stay accurate where 1 - u would round.
    double quantile_tail(double q) const {
        if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile_tail: q outside (0,1)");
        switch (family_) {
            case Family::Normal: return p1_ - p2_ * normal_quantile(q);
            case Family::StudentT: return t_tail_quantile(q);
            case Family::Uniform: return p2_ - (p2_ - p1_) * q;
            case Family::Beta:
                if (p1_ == 0.5 && p2_ == 0.5) {
                    double s = std::sin(1.5707963267948966 * q);
                    return 1.0 - s * s;
                }
                return 1.0 - Distribution::beta(p2_, p1_).beta_quantile(q);
            case Family::Exponential: return -std::log(q) / p1_;
            case Family::ChiSquare: return chisq_tail_quantile(q);
            case Family::Weibull: return p2_ * std::pow(-std::log(q), 1.0 / p1_);
            case Family::Pareto: return p2_ * std::pow(q, -1.0 / p1_);
        }
        return 0.0;
    }

    bool power_moment_exists(int k) const {
        switch (family_) {
            case Family::StudentT: return k < p1_;
            case Family::Pareto: return k < p1_;
            default: return true;
        }
    }

    double mean() const {
        switch (family_) {
            case Family::Normal: return p1_;
            case Family::StudentT:
                if (p1_ <= 1) throw std::domain_error("t: mean does not exist for df <= 1");
                return 0.0;
            case Family::Uniform: return 0.5 * (p1_ + p2_);
            case Family::Beta: return p1_ / (p1_ + p2_);
            case Family::Exponential: return 1.0 / p1_;
            case Family::ChiSquare: return p1_;
            case Family::Weibull: return p2_ * std::tgamma(1.0 + 1.0 / p1_);
            case Family::Pareto:
                if (p1_ <= 1) throw std::domain_error("pareto: mean does not exist for shape <= 1");
                return p1_ * p2_ / (p1_ - 1.0);
        }
        return 0.0;
    }

    double variance() const {
        switch (family_) {
            case Family::Normal: return p2_ * p2_;
            case Family::StudentT:
                if (p1_ <= 2) throw std::domain_error("t: variance does not exist for df <= 2");
                return p1_ / (p1_ - 2.0);
            case Family::Uniform: {
                double w = p2_ - p1_;
                return w * w / 12.0;
            }
            case Family::Beta: {
                double s = p1_ + p2_;
                return p1_ * p2_ / (s * s * (s + 1.0));
            }
            case Family::Exponential: return 1.0 / (p1_ * p1_);
            case Family::ChiSquare: return 2.0 * p1_;
            case Family::Weibull: {
                double g1 = std::tgamma(1.0 + 1.0 / p1_), g2 = std::tgamma(1.0 + 2.0 / p1_);
                return p2_ * p2_ * (g2 - g1 * g1);
            }
            case Family::Pareto: {
                if (p1_ <= 2) throw std::domain_error("pareto: variance does not exist for shape <= 2");
                double a = p1_;
                return p2_ * p2_ * a / ((a - 1.0) * (a - 1.0) * (a - 2.0));
            }
        }
        return 0.0;
    }

    template <class Rng>
    double sample(Rng& rng) const {
        return quantile(rng.u01());
    }

    std::string name() const {
        auto num = [](double v) {
            std::string s = std::to_string(v);
            s.erase(s.find_last_not_of('0') + 1);
            if (!s.empty() && s.back() == '.') s.pop_back();
            return s;
        };
        switch (family_) {
            case Family::Normal:
                return (p1_ == 0 && p2_ == 1) ? "normal" : "normal(" + num(p1_) + "," + num(p2_) + ")";
            case Family::StudentT: return p1_ == 3 ? "t3" : "t(" + num(p1_) + ")";
            case Family::Uniform:
                return (p1_ == 0 && p2_ == 1) ? "uniform" : "uniform(" + num(p1_) + "," + num(p2_) + ")";
            case Family::Beta: return "beta(" + num(p1_) + "," + num(p2_) + ")";
            case Family::Exponential: return p1_ == 1 ? "exp" : "exp(" + num(p1_) + ")";
            case Family::ChiSquare: return "chisq(" + num(p1_) + ")";
            case Family::Weibull:
                return p2_ == 1 ? "weibull(" + num(p1_) + ")" : "weibull(" + num(p1_) + "," + num(p2_) + ")";
            case Family::Pareto:
                return p2_ == 1 ? "pareto(" + num(p1_) + ")" : "pareto(" + num(p1_) + "," + num(p2_) + ")";
        }
        return "?";
    }

private:
    Family family_;
    double p1_, p2_;

    Distribution(Family f, double a, double b) : family_(f), p1_(a), p2_(b) {}

    // Student-t survival function for x > 0, accurate down to tiny tails.
    double t_sf(double x) const {
        double df = p1_;
        if (df == 3.0 && x > 8.0) {
            // series for atan(y) - y/(1+y^2), y = sqrt(3)/x
            double y = 1.7320508075688772935 / x, y2 = y * y;
            double term = 0.0, p = y * y2;
            for (int k = 1; k <= 14; ++k) {
                double coef = 2.0 * k / (2.0 * k + 1.0);
                term += (k % 2 ? coef : -coef) * p;
                p *= y2;
            }
            return term / 3.14159265358979323846;
        }
        double t = df / (df + x * x);
        return 0.5 * ibeta_reg(0.5 * df, 0.5, t);
    }

    double t_tail_quantile(double q) const {
        double df = p1_;
        if (q == 0.5) return 0.0;
        if (q > 0.5) return -t_tail_quantile(1.0 - q);
        // asymptotic seed: sf(x) ~ (A/df) x^-df
        double la = std::lgamma(0.5 * (df + 1)) - std::lgamma(0.5 * df) -
                    0.5 * std::log(df * 3.14159265358979323846) +
                    0.5 * (df + 1) * std::log(df);
        double x0 = std::exp((la - std::log(df) - std::log(q)) / df);
        if (q > 0.05) x0 = std::min(x0, 15.0);
        double lo = 0.0, hi = std::max(2.0 * x0, 32.0);
        while (t_sf(hi) > q) hi *= 4.0;  // expand bracket outward
        double x = std::clamp(x0, lo, hi);
        for (int it = 0; it < 100; ++it) {
            double f = t_sf(x) - q;
            if (f > 0) lo = x;
            else hi = x;
            double d = pdf(x);
            double xn = (d > 0) ? x + f / d : 0.5 * (lo + hi);
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) <= 1e-12 * std::max(1.0, std::abs(xn)) && it > 1) return xn;
            x = xn;
        }
        return x;
    }

    double beta_quantile(double u) const {
        if (p1_ == 0.5 && p2_ == 0.5) {
            double s = std::sin(1.5707963267948966 * u);
            return s * s;
        }
        double init = p1_ / (p1_ + p2_);
        return invert_cdf([this](double x) { return cdf(x); }, [this](double x) { return pdf(x); },
                          u, 0.0, 1.0, init);
    }

    double chisq_quantile(double u) const {
        double k = p1_;
        double z = normal_quantile(u);
        double c = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
        double init = k * c * c * c;  // Wilson-Hilferty
        if (!(init > 0)) init = k * std::exp(z * std::sqrt(2.0 / k));
        double hi = std::max(4.0 * k + 40.0, 4.0 * init);
        while (cdf(hi) < u) hi *= 2.0;
        return invert_cdf([this](double x) { return cdf(x); }, [this](double x) { return pdf(x); },
                          u, 0.0, hi, init);
    }

    double chisq_tail_quantile(double q) const {
        if (q > 0.5) return chisq_quantile(1.0 - q);
        double a = 0.5 * p1_;
        double z = -normal_quantile(q);
        double k = p1_;
        double c = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
        double x = std::max(k * c * c * c, k);
        double lo = 0.0, hi = x * 8.0 + 80.0;
        while (igamma_upper_reg(a, 0.5 * hi) > q) hi *= 2.0;
        for (int it = 0; it < 100; ++it) {
            double f = igamma_upper_reg(a, 0.5 * x) - q;
            if (f > 0) lo = x;
            else hi = x;
            double d = pdf(x);
            double xn = (d > 0) ? x + f / d : 0.5 * (lo + hi);
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) <= 1e-12 * std::max(1.0, std::abs(xn)) && it > 1) return xn;
            x = xn;
        }
        return x;
    }
};

// The compact names accepted on the command line and in config files.
inline Distribution parse_distribution(const std::string& spec) {
    auto fail = [&]() -> Distribution {
        throw std::invalid_argument("unknown distribution: '" + spec + "'");
    };
    std::string head = spec;
    std::vector<double> args;
    auto lp = spec.find('(');
    if (lp != std::string::npos) {
        if (spec.back() != ')') return fail();
        head = spec.substr(0, lp);
        std::string inner = spec.substr(lp + 1, spec.size() - lp - 2);
        std::size_t pos = 0;
        while (pos < inner.size()) {
            auto comma = inner.find(',', pos);
            std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                args.push_back(std::stod(tok));
            } catch (...) {
                return fail();
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto n = args.size();
    if (head == "normal") {
        if (n == 0) return Distribution::normal(0, 1);
        if (n == 2) return Distribution::normal(args[0], args[1]);
    } else if (head == "t3" && n == 0) {
        return Distribution::student_t(3);
    } else if (head == "t" && n == 1) {
        return Distribution::student_t(args[0]);
    } else if (head == "uniform") {
        if (n == 0) return Distribution::uniform(0, 1);
        if (n == 2) return Distribution::uniform(args[0], args[1]);
    } else if (head == "beta" && n == 2) {
        return Distribution::beta(args[0], args[1]);
    } else if (head == "exp") {
        if (n == 0) return Distribution::exponential(1);
        if (n == 1) return Distribution::exponential(args[0]);
    } else if (head == "chisq" && n == 1) {
        return Distribution::chi_square(args[0]);
    } else if (head == "weibull") {
        if (n == 1) return Distribution::weibull(args[0]);
        if (n == 2) return Distribution::weibull(args[0], args[1]);
    } else if (head == "pareto") {
        if (n == 1) return Distribution::pareto(args[0]);
        if (n == 2) return Distribution::pareto(args[0], args[1]);
    }
    return fail();
}

// The ten populations used in the efficiency studies.
inline std::vector<Distribution> catalog() {
    return {
        Distribution::normal(0, 1),  Distribution::student_t(3),   Distribution::uniform(0, 1),
        Distribution::beta(0.5, 0.5), Distribution::exponential(1), Distribution::chi_square(5),
        Distribution::weibull(0.5),  Distribution::weibull(1.5),   Distribution::pareto(2.5),
        Distribution::pareto(4),
    };
}

}  // namespace jps

#endif  // JPSTRAT_DISTRIBUTIONS_HPP
