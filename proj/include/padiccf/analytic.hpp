#ifndef PADICCF_ANALYTIC_HPP
#define PADICCF_ANALYTIC_HPP

#include <algorithm>
#include <cstdint>
#include <string>

#include "padiccf/padic.hpp"
#include "padiccf/rational.hpp"
#include "padiccf/valuation.hpp"

namespace padiccf {

enum class analytic_domain { one_units, topological_nilpotents };

inline std::string_view to_string(analytic_domain d)
{
    return d == analytic_domain::one_units ? "1+pZ_p" : "pZ_p";
}

inline bool in_domain(const Rational& x, std::uint64_t p, analytic_domain d)
{
    const Rational probe = d == analytic_domain::one_units ? x - Rational(1) : x;
    return probe.is_zero() || valuation(probe, p) >= 1;
}

inline bool in_domain(const PAdic& x, analytic_domain d)
{
    if (d == analytic_domain::topological_nilpotents)
        return x.is_zero() || x.valuation() >= 1;
    if (x.is_zero() || x.valuation() != 0 || x.absolute_precision() < 1)
        return false;
    return x.unit() % x.p() == 1;
}

/// How many series terms are summed and why the rest can be dropped:
/// every omitted term has valuation >= leading_valuation + target_precision.
struct TruncationPlan {
    long target_precision = 0;
    long term_count = 0;
    long leading_valuation = 0;
    std::string justification;
};

namespace detail {

inline long floor_log(std::uint64_t p, long n)
{
    long e = 0;
    for (unsigned long long q = p; q <= static_cast<unsigned long long>(n); q *= p)
        ++e;
    return e;
}

inline long vp_small(long n, std::uint64_t p)
{
    long e = 0;
    while (n % static_cast<long>(p) == 0) {
        n /= static_cast<long>(p);
        ++e;
    }
    return e;
}

} // namespace detail

/// Terms of sum (-1)^(n-1) t^n / n with v(t) = v have valuation at least
/// n*v - floor(log_p n), which is nondecreasing in n; term_count is the last n
/// where that lower bound is still below v + N.
inline TruncationPlan log_truncation_plan(std::uint64_t p, long v, long digits)
{
    if (v < 1)
        throw domain_error("log series needs valuation(A - 1) >= 1");
    long n = 1;
    while ((n + 1) * v - detail::floor_log(p, n + 1) < v + digits)
        ++n;
    return {digits, n, v,
            "term n has valuation >= n*v - floor(log_p n) >= v + N for n > " + std::to_string(n)};
}

/// Terms x^n / n! with v(x) = v have valuation n*v - (n - s_p(n))/(p-1);
/// that is not monotone, so every n up to 2N + 2 is checked (past that the
/// bound n*(v - 1/(p-1)) >= n/2 already exceeds N).
inline TruncationPlan exp_truncation_plan(std::uint64_t p, long v, long digits)
{
    if (v < 1)
        throw domain_error("exp series needs valuation(x) >= 1");
    long last = 0;
    long fact_val = 0;
    for (long n = 1; n <= 2 * digits + 2; ++n) {
        fact_val += detail::vp_small(n, p);
        if (n * v - fact_val < digits)
            last = n;
    }
    return {digits, last, 0,
            "term n has valuation n*v - v_p(n!) >= N for n > " + std::to_string(last)};
}

/// p-adic logarithm on 1 + pZ_p, to `digits` significant digits (fewer if the
/// input is known to less absolute precision; log is an isometry there).
inline PAdic log_p(const PAdic& a, long digits = default_precision, TruncationPlan* plan = nullptr)
{
    if (!in_domain(a, analytic_domain::one_units))
        throw domain_error("log_p: argument is not in 1+pZ_p");
    const std::uint64_t p = a.p();
    PAdic t = PAdic::zero(p);
    try {
        t = a - PAdic::from_rational(Rational(1), p, a.precision());
    } catch (const precision_error&) {
        throw precision_error("log_p: argument is indistinguishable from 1 at its precision");
    }
    const long v = t.valuation();
    const long n_out = std::min(digits, t.precision());
    const TruncationPlan tp = log_truncation_plan(p, v, n_out);
    if (plan)
        *plan = tp;

    // sum (-1)^(n-1) T^n / n over the common denominator lcm(1..n_max).
    const BigInt T = t.truncated(n_out).to_rational().num();
    BigInt lcm = 1;
    for (long n = 2; n <= tp.term_count; ++n)
        lcm = boost::multiprecision::lcm(lcm, BigInt(n));
    BigInt acc = 0;
    BigInt power = 1;
    for (long n = 1; n <= tp.term_count; ++n) {
        power *= T;
        const BigInt term = power * (lcm / n);
        if (n % 2 == 1)
            acc += term;
        else
            acc -= term;
    }
    return PAdic::from_rational_absolute(Rational(acc, lcm), p, v + n_out);
}

inline PAdic log_p(const Rational& a, std::uint64_t p, long digits = default_precision,
                   TruncationPlan* plan = nullptr)
{
    require_odd_prime(p);
    if (!in_domain(a, p, analytic_domain::one_units))
        throw domain_error("log_p: " + a.str() + " is not in 1+pZ_p");
    if (a == Rational(1)) {
        if (plan)
            *plan = {digits, 0, 0, "log(1) = 0 exactly"};
        return PAdic::zero(p);
    }
    const long v = valuation(a - Rational(1), p);
    return log_p(PAdic::from_rational(a, p, v + digits), digits, plan);
}

/// p-adic exponential on pZ_p, to `digits` significant digits.
inline PAdic exp_p(const PAdic& x, long digits = default_precision, TruncationPlan* plan = nullptr)
{
    if (!in_domain(x, analytic_domain::topological_nilpotents))
        throw domain_error("exp_p: argument is not in pZ_p");
    const std::uint64_t p = x.p();
    const long n_out = std::min(digits, x.absolute_precision());
    if (x.is_zero() || x.valuation() >= n_out) {
        if (plan)
            *plan = {n_out, 0, 0, "argument vanishes at the target precision"};
        return PAdic::from_rational(Rational(1), p, n_out);
    }
    const TruncationPlan tp = exp_truncation_plan(p, x.valuation(), n_out);
    if (plan)
        *plan = tp;

    // sum T^n / n! over the common denominator n_max!.
    const BigInt T = x.truncated_absolute(n_out).to_rational().num();
    BigInt fact = 1;
    for (long n = 2; n <= tp.term_count; ++n)
        fact *= n;
    BigInt acc = fact;
    BigInt power = 1;
    BigInt ratio = fact; // n_max! / n!
    for (long n = 1; n <= tp.term_count; ++n) {
        power *= T;
        ratio /= n;
        acc += power * ratio;
    }
    return PAdic::from_rational_absolute(Rational(acc, fact), p, n_out);
}

inline PAdic exp_p(const Rational& x, std::uint64_t p, long digits = default_precision,
                   TruncationPlan* plan = nullptr)
{
    require_odd_prime(p);
    if (!in_domain(x, p, analytic_domain::topological_nilpotents))
        throw domain_error("exp_p: " + x.str() + " is not in pZ_p");
    if (x.is_zero())
        return exp_p(PAdic::zero(p), digits, plan);
    return exp_p(PAdic::from_rational(x, p, digits), digits, plan);
}

/// A^B = exp(B log A) for A in 1+pZ_p and B in pZ_p.
inline PAdic pow_p(const PAdic& a, const PAdic& b, long digits = default_precision)
{
    if (a.p() != b.p())
        throw domain_error("pow_p: operands belong to different primes");
    if (!in_domain(a, analytic_domain::one_units))
        throw domain_error("pow_p: base is not in 1+pZ_p");
    if (!in_domain(b, analytic_domain::topological_nilpotents))
        throw domain_error("pow_p: exponent is not in pZ_p");
    const PAdic exponent = b * log_p(a, digits);
    if (!exponent.is_zero() && exponent.valuation() < 2)
        throw domain_error("pow_p: |B ln A|_p exceeds p^-2");
    return exp_p(exponent, digits);
}

inline PAdic pow_p(const Rational& a, const Rational& b, std::uint64_t p, long digits = default_precision)
{
    require_odd_prime(p);
    if (!in_domain(a, p, analytic_domain::one_units))
        throw domain_error("pow_p: base " + a.str() + " is not in 1+pZ_p");
    if (!in_domain(b, p, analytic_domain::topological_nilpotents))
        throw domain_error("pow_p: exponent " + b.str() + " is not in pZ_p");
    if (a == Rational(1) || b.is_zero())
        return PAdic::from_rational(Rational(1), p, digits);
    const long va = valuation(a - Rational(1), p);
    return pow_p(PAdic::from_rational(a, p, va + digits), PAdic::from_rational(b, p, digits), digits);
}

/// First-order coefficients of f(x, y) = x^y at (A_n, B_n):
/// c1 = df/dx = (B_n / A_n) A_n^B_n and c2 = df/dy = ln(A_n) A_n^B_n.
struct PowLinearization {
    PAdic c1;
    PAdic c2;
};

inline PowLinearization pow_linearization(const Rational& a_n, const Rational& b_n, std::uint64_t p,
                                          long digits = default_precision)
{
    require_odd_prime(p);
    if (a_n.is_zero())
        throw domain_error("pow_linearization: A_n = 0");
    const PAdic power = pow_p(a_n, b_n, p, digits);
    const PAdic c1 = b_n.is_zero() ? PAdic::zero(p) : PAdic::from_rational(b_n / a_n, p, digits) * power;
    const PAdic c2 = log_p(a_n, p, digits) * power;
    return {c1, c2};
}

/// Square root of x in Q_p to `digits` significant digits. When x is the
/// square of a rational the positive rational root is returned; otherwise the
/// root whose leading digit is smaller.
inline PAdic sqrt_p(const Rational& x, std::uint64_t p, long digits = default_precision)
{
    require_odd_prime(p);
    if (x.is_zero())
        return PAdic::zero(p);
    if (digits < 1)
        throw domain_error("precision must be at least one digit");
    const auto [v, unit] = split_unit(x, p);
    if (v % 2 != 0)
        throw no_root_error("sqrt_p: " + x.str() + " has odd valuation " + std::to_string(v));
    const BigInt bp(p);
    const BigInt u0 = unit_residue(unit, bp);
    if (boost::multiprecision::powm(u0, (bp - 1) / 2, bp) != 1)
        throw no_root_error("sqrt_p: " + x.str() + " is not a square modulo " + std::to_string(p));

    if (x.sign() > 0) {
        const BigInt rn = boost::multiprecision::sqrt(x.num());
        const BigInt rd = boost::multiprecision::sqrt(x.den());
        if (rn * rn == x.num() && rd * rd == x.den())
            return PAdic::from_rational(Rational(rn, rd), p, digits);
    }

    // Tonelli-Shanks for the first digit.
    BigInt r;
    {
        BigInt q = bp - 1;
        long s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        BigInt z = 2;
        while (boost::multiprecision::powm(z, (bp - 1) / 2, bp) != bp - 1)
            ++z;
        BigInt c = boost::multiprecision::powm(z, q, bp);
        r = boost::multiprecision::powm(u0, (q + 1) / 2, bp);
        BigInt t = boost::multiprecision::powm(u0, q, bp);
        long m = s;
        while (t != 1) {
            long i = 0;
            BigInt tt = t;
            while (tt != 1) {
                tt = tt * tt % bp;
                ++i;
            }
            BigInt b = c;
            for (long j = 0; j < m - i - 1; ++j)
                b = b * b % bp;
            r = r * b % bp;
            c = b * b % bp;
            t = t * c % bp;
            m = i;
        }
    }
    if (bp - r < r)
        r = bp - r;

    // Newton lifting y <- y - (y^2 - u) / (2y), doubling correct digits each round.
    const BigInt mod = ipow(bp, static_cast<std::uint64_t>(digits));
    const BigInt u = unit_residue(unit, mod);
    BigInt y = r;
    for (long known = 1; known < digits; known *= 2)
        y = mod_floor(y - (y * y - u) * mod_inverse(2 * y, mod), mod);
    return PAdic::from_rational(Rational(y) * prime_power(p, v / 2), p, digits);
}

} // namespace padiccf

#endif
