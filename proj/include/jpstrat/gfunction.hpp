#ifndef JPSTRAT_GFUNCTION_HPP
#define JPSTRAT_GFUNCTION_HPP

#include <jpstrat/distributions.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace jps {

enum class Monotonicity { Increasing, Decreasing, NonMonotone };

// Transform g applied to the variable of interest; moments of g(X) are the
// estimation targets throughout.
class GFunction {
public:
    enum class Kind { Identity, Power, Indicator, UserTabulated };

    static GFunction identity() { return GFunction(Kind::Identity); }
    static GFunction power(int k) {
        if (k < 1) throw std::invalid_argument("power: exponent must be >= 1");
        GFunction g(Kind::Power);
        g.k_ = k;
        return g;
    }
    static GFunction indicator(double threshold) {
        GFunction g(Kind::Indicator);
        g.c_ = threshold;
        return g;
    }
    static GFunction user(std::function<double(double)> fn, bool monotone_increasing) {
        GFunction g(Kind::UserTabulated);
        g.fn_ = std::move(fn);
        g.user_monotone_inc_ = monotone_increasing;
        return g;
    }

    Kind kind() const { return kind_; }
    int exponent() const { return k_; }
    double threshold() const { return c_; }

    double operator()(double x) const {
        switch (kind_) {
            case Kind::Identity: return x;
            case Kind::Power: {
                double r = x;
                for (int i = 1; i < k_; ++i) r *= x;
                return r;
            }
            case Kind::Indicator: return x <= c_ ? 1.0 : 0.0;
            case Kind::UserTabulated: return fn_(x);
        }
        return x;
    }

    // Monotonicity over the support of dist, which decides whether ranking on
    // g(X) can reuse ranking on X.
    Monotonicity monotonicity_on(const Distribution& dist) const {
        switch (kind_) {
            case Kind::Identity: return Monotonicity::Increasing;
            case Kind::Power:
                if (k_ % 2 == 1) return Monotonicity::Increasing;
                if (dist.support_lo() >= 0.0) return Monotonicity::Increasing;
                if (dist.support_hi() <= 0.0) return Monotonicity::Decreasing;
                return Monotonicity::NonMonotone;
            case Kind::Indicator: return Monotonicity::Decreasing;
            case Kind::UserTabulated:
                return user_monotone_inc_ ? Monotonicity::Increasing : Monotonicity::NonMonotone;
        }
        return Monotonicity::NonMonotone;
    }

    // Finite-second-moment precondition for moments of g(X) under dist.
    bool second_moment_exists(const Distribution& dist) const {
        switch (kind_) {
            case Kind::Identity: return dist.power_moment_exists(2);
            case Kind::Power: return dist.power_moment_exists(2 * k_);
            case Kind::Indicator: return true;
            case Kind::UserTabulated: return true;  // caller's responsibility
        }
        return true;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Identity: return "identity";
            case Kind::Power: return "pow:" + std::to_string(k_);
            case Kind::Indicator: {
                std::string s = std::to_string(c_);
                s.erase(s.find_last_not_of('0') + 1);
                if (!s.empty() && s.back() == '.') s.pop_back();
                return "ind:" + s;
            }
            case Kind::UserTabulated: return "user";
        }
        return "?";
    }

private:
    explicit GFunction(Kind k) : kind_(k) {}
    Kind kind_;
    int k_ = 1;
    double c_ = 0.0;
    bool user_monotone_inc_ = false;
    std::function<double(double)> fn_;
};

inline GFunction parse_gfunction(const std::string& spec) {
    if (spec == "identity" || spec == "id") return GFunction::identity();
    if (spec.rfind("pow:", 0) == 0) return GFunction::power(std::stoi(spec.substr(4)));
    if (spec.rfind("ind:", 0) == 0) return GFunction::indicator(std::stod(spec.substr(4)));
    throw std::invalid_argument("unknown g-function: '" + spec + "'");
}

}  // namespace jps

#endif  // JPSTRAT_GFUNCTION_HPP
