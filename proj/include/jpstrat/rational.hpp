#ifndef JPSTRAT_RATIONAL_HPP
#define JPSTRAT_RATIONAL_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace jps {

// Arbitrary-precision signed integer, base 2^32 limbs, little-endian.
// Sized for exact weight-scheme combinatorics (numbers up to ~H^n with
// n in the hundreds), not for cryptographic workloads.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v) {  // NOLINT: implicit by design
        if (v < 0) { sign_ = -1; set_mag_u64(static_cast<std::uint64_t>(-(v + 1)) + 1); }
        else if (v > 0) { sign_ = 1; set_mag_u64(static_cast<std::uint64_t>(v)); }
    }
    static BigInt from_u64(std::uint64_t v) {
        BigInt r;
        if (v) { r.sign_ = 1; r.set_mag_u64(v); }
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ >= 0) return c <=> 0;
        return 0 <=> c;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return r;
            if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
            else       { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.sign_ == 0 || b.sign_ == 0) return r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }
    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // Truncated division (quotient rounds toward zero, like int64).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) { q = BigInt(); r = a; return; }
        std::vector<std::uint32_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q.mag_ = std::move(qm); q.trim(); q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.mag_ = std::move(rm); r.trim(); r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt t = a % b;
            a = std::move(b);
            b = std::move(t);
        }
        return a;
    }

    static BigInt pow(BigInt base, std::uint64_t e) {
        BigInt r(1);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // Mantissa-from-top-limbs plus binary exponent: value ~= mant * 2^exp2.
    // Three limbs guarantee >= 64 significant bits even when the top limb is short.
    void frexp64(double& mant, long& exp2) const {
        if (sign_ == 0) { mant = 0; exp2 = 0; return; }
        const std::size_t k = mag_.size();
        const std::size_t take = std::min<std::size_t>(3, k);
        long double m = 0.0L;
        for (std::size_t i = 0; i < take; ++i) {
            m = m * 4294967296.0L + static_cast<long double>(mag_[k - 1 - i]);
        }
        mant = static_cast<double>(m) * (sign_ < 0 ? -1.0 : 1.0);
        exp2 = 32L * static_cast<long>(k - take);
    }
    double to_double() const {
        double m;
        long e;
        frexp64(m, e);
        return std::ldexp(m, static_cast<int>(e));
    }

    std::uint64_t to_u64() const {  // caller guarantees it fits
        std::uint64_t v = 0;
        if (mag_.size() > 2) throw std::overflow_error("BigInt: does not fit in u64");
        if (mag_.size() > 1) v = static_cast<std::uint64_t>(mag_[1]) << 32;
        if (!mag_.empty()) v |= mag_[0];
        return v;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::string out;
        BigInt t = *this;
        t.sign_ = 1;
        const BigInt ten(10);
        while (!t.is_zero()) {
            BigInt q, r;
            divmod(t, ten, q, r);
            out.push_back(static_cast<char>('0' + (r.mag_.empty() ? 0 : r.mag_[0])));
            t = std::move(q);
        }
        if (sign_ < 0) out.push_back('-');
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    void set_mag_u64(std::uint64_t v) {
        mag_.clear();
        mag_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) mag_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(big.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
            r[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        r[big.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
            if (d < 0) { d += (1LL << 32); borrow = 1; }
            else borrow = 0;
            r[i] = static_cast<std::uint32_t>(d);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            std::uint64_t ai = a[i];
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = r[i + j] + ai * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r[i + b.size()] = static_cast<std::uint32_t>(carry);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // Schoolbook base-2^32 long division (Knuth D with normalization).
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<std::uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<std::uint32_t>(rem));
            return;
        }
        int shift = std::countl_zero(b.back());
        std::vector<std::uint32_t> u = shl_bits(a, shift);
        std::vector<std::uint32_t> v = shl_bits(b, shift);
        const std::size_t nlen = v.size();
        const std::size_t mlen = u.size() - nlen;
        u.push_back(0);
        q.assign(mlen + 1, 0);
        const std::uint64_t vtop = v[nlen - 1];
        const std::uint64_t vnext = v[nlen - 2];
        for (std::size_t j = mlen + 1; j-- > 0;) {
            std::uint64_t num = (static_cast<std::uint64_t>(u[j + nlen]) << 32) | u[j + nlen - 1];
            std::uint64_t qhat = num / vtop;
            std::uint64_t rhat = num % vtop;
            if (qhat > 0xffffffffULL) { qhat = 0xffffffffULL; rhat = num - qhat * vtop; }
            while (rhat <= 0xffffffffULL && qhat * vnext > ((rhat << 32) | u[j + nlen - 2])) {
                --qhat;
                rhat += vtop;
            }
            // u[j .. j+nlen] -= qhat * v
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < nlen; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                std::int64_t d = static_cast<std::int64_t>(u[i + j]) - static_cast<std::int64_t>(p & 0xffffffffULL) - borrow;
                if (d < 0) { d += (1LL << 32); borrow = 1; }
                else borrow = 0;
                u[i + j] = static_cast<std::uint32_t>(d);
            }
            std::int64_t d = static_cast<std::int64_t>(u[j + nlen]) - static_cast<std::int64_t>(carry) - borrow;
            if (d < 0) {  // qhat one too large: add back
                d += (1LL << 32);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < nlen; ++i) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<std::uint32_t>(s);
                    c2 = s >> 32;
                }
                d += static_cast<std::int64_t>(c2);
                d &= 0xffffffffLL;
            }
            u[j + nlen] = static_cast<std::uint32_t>(d);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        u.resize(nlen);
        r = shr_bits(u, shift);
        while (!q.empty() && q.back() == 0) q.pop_back();
    }
    static std::vector<std::uint32_t> shl_bits(std::vector<std::uint32_t> x, int s) {
        if (s == 0) return x;
        std::uint32_t carry = 0;
        for (auto& w : x) {
            std::uint32_t nc = w >> (32 - s);
            w = (w << s) | carry;
            carry = nc;
        }
        if (carry) x.push_back(carry);
        return x;
    }
    static std::vector<std::uint32_t> shr_bits(std::vector<std::uint32_t> x, int s) {
        if (s == 0) {
            while (!x.empty() && x.back() == 0) x.pop_back();
            return x;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uint32_t hi = (i + 1 < x.size()) ? x[i + 1] : 0;
            x[i] = (x[i] >> s) | (hi << (32 - s));
        }
        while (!x.empty() && x.back() == 0) x.pop_back();
        return x;
    }
};

inline BigInt factorial_big(unsigned n) {
    BigInt r(1);
    for (unsigned i = 2; i <= n; ++i) r *= BigInt(static_cast<std::int64_t>(i));
    return r;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
    if (k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt r(1);
    for (unsigned i = 1; i <= k; ++i) {
        r *= BigInt(static_cast<std::int64_t>(n - k + i));
        r = r / BigInt(static_cast<std::int64_t>(i));  // exact at every step
    }
    return r;
}

// Exact rational, always kept reduced with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    double to_double() const {
        double mn, md;
        long en, ed;
        if (num_.is_zero()) return 0.0;
        num_.frexp64(mn, en);
        den_.frexp64(md, ed);
        return std::ldexp(mn / md, static_cast<int>(en - ed));
    }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        if (!(g == BigInt(1))) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace jps

#endif  // JPSTRAT_RATIONAL_HPP
