#ifndef PADICCF_PADIC_HPP
#define PADICCF_PADIC_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "padiccf/bigint.hpp"
#include "padiccf/rational.hpp"
#include "padiccf/valuation.hpp"

namespace padiccf {

inline constexpr long default_precision = 64;

/// A p-adic number known to a finite number of significant digits.
///
/// A nonzero value is p^valuation * unit, where the unit is only known
/// modulo p^precision. It is stored as the integer residue in [1, p^precision)
/// which is never divisible by p, so the leading digit is always nonzero.
/// The absolute precision (the exponent up to which the value is known) is
/// valuation + precision.
///
/// Multiplication and division keep min(N_a, N_b) significant digits.
/// Addition and subtraction keep the smaller absolute precision, so the
/// significant-digit count drops by exactly the number of leading digits that
/// cancel. A cancellation that wipes out every known digit raises a
/// precision_error rather than returning a fabricated value.
///
/// Exact zero is a separate state with infinite valuation and precision.
class PAdic {
public:
    static PAdic zero(std::uint64_t p)
    {
        require_odd_prime(p);
        PAdic z;
        z.p_ = p;
        z.zero_ = true;
        z.val_ = infinite_valuation;
        return z;
    }

    /// x rounded to `digits` significant digits. Zero maps to exact zero.
    static PAdic from_rational(const Rational& x, std::uint64_t p, long digits = default_precision)
    {
        require_odd_prime(p);
        if (digits < 1)
            throw domain_error("precision must be at least one digit");
        if (x.is_zero())
            return zero(p);
        auto [v, unit] = split_unit(x, p);
        const BigInt mod = ipow(BigInt(p), static_cast<std::uint64_t>(digits));
        return PAdic(p, v, unit_residue(unit, mod), digits);
    }

    /// x known modulo p^abs_precision. A value that is zero modulo
    /// p^abs_precision cannot be represented and raises precision_error.
    static PAdic from_rational_absolute(const Rational& x, std::uint64_t p, long abs_precision)
    {
        require_odd_prime(p);
        if (x.is_zero())
            return zero(p);
        const long v = padiccf::valuation(x, p);
        if (v >= abs_precision)
            throw precision_error("value is zero to absolute precision " + std::to_string(abs_precision));
        return from_rational(x, p, abs_precision - v);
    }

    /// Builds sum(digits[i] * p^(val + i)) known to `prec` digits. Leading
    /// zero digits are absorbed into the valuation.
    static PAdic from_digits(std::uint64_t p, long val, const std::vector<std::uint64_t>& digits, long prec)
    {
        require_odd_prime(p);
        if (prec < 1 || static_cast<std::size_t>(prec) < digits.size())
            throw domain_error("prec must be positive and cover every supplied digit");
        BigInt u = 0;
        BigInt scale = 1;
        for (const auto d : digits) {
            if (d >= p)
                throw domain_error("digit " + std::to_string(d) + " out of range for p = " + std::to_string(p));
            u += scale * d;
            scale *= p;
        }
        if (u == 0)
            throw precision_error("all supplied digits are zero; value is indistinguishable from zero");
        const long shift = strip_factor(u, BigInt(p));
        return PAdic(p, val + shift, std::move(u), prec - shift);
    }

    std::uint64_t p() const noexcept { return p_; }
    bool is_zero() const noexcept { return zero_; }
    long valuation() const noexcept { return val_; }
    long precision() const noexcept { return prec_; }
    long absolute_precision() const noexcept { return zero_ ? infinite_valuation : val_ + prec_; }
    const BigInt& unit() const noexcept { return unit_; }

    /// True when the value cannot be told apart from zero modulo p^abs.
    bool indistinguishable_from_zero(long abs) const { return zero_ || val_ >= abs; }

    /// Base-p digits, least significant first; digits()[0] is nonzero.
    std::vector<std::uint64_t> digits() const
    {
        std::vector<std::uint64_t> out;
        if (zero_)
            return out;
        out.reserve(static_cast<std::size_t>(prec_));
        BigInt r = unit_;
        const BigInt bp(p_);
        for (long i = 0; i < prec_; ++i) {
            BigInt q, d;
            boost::multiprecision::divide_qr(r, bp, q, d);
            out.push_back(static_cast<std::uint64_t>(d));
            r = std::move(q);
        }
        return out;
    }

    /// The truncated value sum(c_i p^(v+i)) as an element of Z[1/p].
    Rational to_rational() const
    {
        if (zero_)
            return Rational();
        return Rational(unit_) * prime_power(p_, val_);
    }

    /// Drops significant digits down to `digits`; never adds any.
    PAdic truncated(long digits) const
    {
        if (zero_ || digits >= prec_)
            return *this;
        if (digits < 1)
            throw domain_error("precision must be at least one digit");
        return PAdic(p_, val_, unit_ % ipow(BigInt(p_), static_cast<std::uint64_t>(digits)), digits);
    }

    /// Same value known only modulo p^abs (never increases precision).
    PAdic truncated_absolute(long abs) const
    {
        if (zero_)
            return *this;
        if (val_ >= abs)
            throw precision_error("value vanishes at absolute precision " + std::to_string(abs));
        return truncated(abs - val_);
    }

    PAdic operator-() const
    {
        if (zero_)
            return *this;
        return PAdic(p_, val_, modulus() - unit_, prec_);
    }

    friend PAdic operator+(const PAdic& a, const PAdic& b)
    {
        a.require_same_prime(b);
        if (a.zero_)
            return b;
        if (b.zero_)
            return a;
        const long abs = std::min(a.absolute_precision(), b.absolute_precision());
        const long base = std::min(a.val_, b.val_);
        if (base >= abs)
            throw precision_error("addition: no significant digits survive");
        const BigInt bp(a.p_);
        const BigInt mod = ipow(bp, static_cast<std::uint64_t>(abs - base));
        BigInt s = 0;
        if (a.val_ < abs)
            s += a.unit_ * ipow(bp, static_cast<std::uint64_t>(a.val_ - base));
        if (b.val_ < abs)
            s += b.unit_ * ipow(bp, static_cast<std::uint64_t>(b.val_ - base));
        s %= mod;
        if (s == 0)
            throw precision_error("addition: all " + std::to_string(abs - base) + " known digits cancelled");
        const long shift = strip_factor(s, bp);
        return PAdic(a.p_, base + shift, std::move(s), abs - base - shift);
    }

    friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }

    friend PAdic operator*(const PAdic& a, const PAdic& b)
    {
        a.require_same_prime(b);
        if (a.zero_ || b.zero_)
            return zero(a.p_);
        const long n = std::min(a.prec_, b.prec_);
        const BigInt mod = ipow(BigInt(a.p_), static_cast<std::uint64_t>(n));
        return PAdic(a.p_, a.val_ + b.val_, (a.unit_ * b.unit_) % mod, n);
    }

    friend PAdic operator/(const PAdic& a, const PAdic& b)
    {
        a.require_same_prime(b);
        if (b.zero_)
            throw arithmetic_error("division by exact zero");
        if (a.zero_)
            return a;
        const long n = std::min(a.prec_, b.prec_);
        const BigInt mod = ipow(BigInt(a.p_), static_cast<std::uint64_t>(n));
        return PAdic(a.p_, a.val_ - b.val_, (a.unit_ * mod_inverse(b.unit_, mod)) % mod, n);
    }

    PAdic reciprocal() const { return from_rational(Rational(1), p_, zero_ ? 1 : prec_) / *this; }

    PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
    PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
    PAdic& operator*=(const PAdic& o) { return *this = *this * o; }
    PAdic& operator/=(const PAdic& o) { return *this = *this / o; }

    /// Bitwise identity: same prime, valuation, precision and digits.
    friend bool operator==(const PAdic& a, const PAdic& b) = default;

    /// True when a and b agree modulo p^abs (both must be known that far).
    friend bool agree_to(const PAdic& a, const PAdic& b, long abs)
    {
        a.require_same_prime(b);
        if (a.absolute_precision() < abs || b.absolute_precision() < abs)
            return false;
        const Rational diff = a.to_rational() - b.to_rational();
        return diff.is_zero() || padiccf::valuation(diff, a.p_) >= abs;
    }

private:
    PAdic() = default;
    PAdic(std::uint64_t p, long v, BigInt u, long n) : p_(p), val_(v), prec_(n), unit_(std::move(u)) {}

    BigInt modulus() const { return ipow(BigInt(p_), static_cast<std::uint64_t>(prec_)); }

    void require_same_prime(const PAdic& o) const
    {
        if (p_ != o.p_)
            throw domain_error("operands belong to different primes");
    }

    std::uint64_t p_ = 3;
    bool zero_ = false;
    long val_ = 0;
    long prec_ = 0;
    BigInt unit_ = 0;
};

} // namespace padiccf

#endif
