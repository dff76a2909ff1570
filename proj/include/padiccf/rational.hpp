#ifndef PADICCF_RATIONAL_HPP
#define PADICCF_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "padiccf/bigint.hpp"

namespace padiccf {

/// Exact rational number, always in lowest terms with a positive denominator.
/// Zero is represented uniquely as 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    /// Parses "num/den" or a bare integer.
    static Rational parse(const std::string& s)
    {
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(parse_bigint(s));
        BigInt d = parse_bigint(s.substr(slash + 1));
        if (d == 0)
            throw domain_error("zero denominator in '" + s + "'");
        return Rational(parse_bigint(s.substr(0, slash)), std::move(d));
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(BigInt(-num_), den_, raw_tag{}); }

    Rational reciprocal() const
    {
        if (num_ == 0)
            throw arithmetic_error("reciprocal of zero");
        if (num_ < 0)
            return Rational(BigInt(-den_), BigInt(-num_), raw_tag{});
        return Rational(den_, num_, raw_tag{});
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        if (a.den_ == b.den_)
            return Rational(a.num_ + b.num_, a.den_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b)
    {
        // Cross-reduce first so the products stay small.
        const BigInt g1 = gcd(a.num_, b.den_);
        const BigInt g2 = gcd(b.num_, a.den_);
        if (g1 == 0 || g2 == 0)
            return Rational();
        return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1), raw_tag{});
    }

    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const BigInt l = a.num_ * b.den_;
        const BigInt r = b.num_ * a.den_;
        if (l < r)
            return std::strong_ordering::less;
        if (l > r)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "num/den" in decimal, e.g. "7/3", "2/1", "-1/2".
    std::string str() const { return num_.str() + "/" + den_.str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    struct raw_tag {};
    Rational(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    static BigInt gcd(const BigInt& a, const BigInt& b)
    {
        if (a == 0)
            return b == 0 ? BigInt(0) : padiccf::abs(b);
        return boost::multiprecision::gcd(a, b);
    }

    void normalize()
    {
        if (den_ == 0)
            throw arithmetic_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        const BigInt g = gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, long long exp)
{
    if (exp < 0)
        return pow(base.reciprocal(), -exp);
    return Rational(ipow(base.num(), static_cast<std::uint64_t>(exp)),
                    ipow(base.den(), static_cast<std::uint64_t>(exp)));
}

/// p^e for any integer e, as an exact rational.
inline Rational prime_power(std::uint64_t p, long long e)
{
    if (e >= 0)
        return Rational(ipow(BigInt(p), static_cast<std::uint64_t>(e)));
    return Rational(BigInt(1), ipow(BigInt(p), static_cast<std::uint64_t>(-e)));
}

} // namespace padiccf

#endif
