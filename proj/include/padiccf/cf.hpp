#ifndef PADICCF_CF_HPP
#define PADICCF_CF_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padiccf/padic.hpp"
#include "padiccf/rational.hpp"
#include "padiccf/valuation.hpp"

namespace padiccf {

/// An element of Z[1/p] in [0, p) together with m, where |value|_p = p^m.
/// For index k >= 1 the value lies in (0, p) and m >= 1.
struct PartialQuotient {
    Rational value;
    long m = 0;

    friend bool operator==(const PartialQuotient&, const PartialQuotient&) = default;

    /// Validates `value` as the k-th partial quotient for prime p.
    static PartialQuotient make(const Rational& value, std::uint64_t p, std::size_t k)
    {
        require_odd_prime(p);
        const Rational bp{BigInt(p)};
        if (value.sign() < 0 || value >= bp)
            throw domain_error("partial quotient " + value.str() + " is outside [0, p)");
        if (value.is_zero()) {
            if (k != 0)
                throw domain_error("partial quotient " + std::to_string(k) + " is zero");
            return {value, 0};
        }
        BigInt d = value.den();
        strip_factor(d, BigInt(p));
        if (d != 1)
            throw domain_error("partial quotient " + value.str() + " is not in Z[1/p]");
        const long v = valuation(value, p);
        if (k >= 1 && v > -1)
            throw domain_error("partial quotient " + std::to_string(k) + " = " + value.str() +
                               " has |.|_p < p");
        return {value, v < 0 ? -v : 0};
    }
};

struct CFExpansion {
    std::uint64_t p = 3;
    std::vector<PartialQuotient> quotients;
    bool terminated = false; // some xi_k equalled its head exactly
    std::string source;
};

/// n-th convergent: p_n/q_n from the recurrence and its reduced form P_n/Q_n.
struct Convergent {
    std::size_t n = 0;
    Rational p_n;
    Rational q_n;
    BigInt P_n;
    BigInt Q_n;
};

/// Digits of x from its leading exponent through exponent 0, i.e. the part of
/// the Hensel expansion that lies in Z[1/p] and is in [0, p).
inline PartialQuotient head(const Rational& x, std::uint64_t p, std::size_t k)
{
    require_odd_prime(p);
    if (x.is_zero()) {
        if (k != 0)
            throw domain_error("head: xi_" + std::to_string(k) + " is zero");
        return {Rational(), 0};
    }
    const auto [v, unit] = split_unit(x, p);
    if (k >= 1 && v > -1)
        throw domain_error("head: xi_" + std::to_string(k) + " must have valuation <= -1, got " +
                           std::to_string(v));
    if (v >= 1)
        return {Rational(), 0};
    const BigInt mod = ipow(BigInt(p), static_cast<std::uint64_t>(1 - v));
    return {Rational(unit_residue(unit, mod)) * prime_power(p, v), -v};
}

inline PartialQuotient head(const PAdic& x, std::size_t k)
{
    if (x.is_zero()) {
        if (k != 0)
            throw domain_error("head: xi_" + std::to_string(k) + " is zero");
        return {Rational(), 0};
    }
    if (k >= 1 && x.valuation() > -1)
        throw domain_error("head: xi_" + std::to_string(k) + " must have valuation <= -1, got " +
                           std::to_string(x.valuation()));
    if (x.absolute_precision() < 1)
        throw precision_error("head: digits of xi_" + std::to_string(k) + " end before exponent 0",
                              static_cast<long>(k), 1 - x.valuation());
    if (x.valuation() >= 1)
        return {Rational(), 0};
    const BigInt mod = ipow(BigInt(x.p()), static_cast<std::uint64_t>(1 - x.valuation()));
    return {Rational(BigInt(x.unit() % mod)) * prime_power(x.p(), x.valuation()), -x.valuation()};
}

/// Continued fraction expansion xi_0 = x, a_k = head(xi_k), xi_{k+1} = 1/(xi_k - a_k).
/// Stops with terminated = true as soon as xi_k equals a_k.
inline CFExpansion expand(const Rational& x, std::uint64_t p, std::size_t max_terms)
{
    require_odd_prime(p);
    if (max_terms == 0)
        throw domain_error("expand: max_terms must be positive");
    CFExpansion out{p, {}, false, x.str()};
    Rational xi = x;
    for (std::size_t k = 0; k < max_terms; ++k) {
        PartialQuotient a = head(xi, p, k);
        Rational rest = xi - a.value;
        out.quotients.push_back(std::move(a));
        if (rest.is_zero()) {
            out.terminated = true;
            break;
        }
        xi = rest.reciprocal();
    }
    return out;
}

/// Expansion of an approximate value. Each step consumes digits; when the
/// window no longer covers a head, or xi_k - a_k cancels to nothing, a
/// precision_error carrying the failing index is raised.
inline CFExpansion expand(const PAdic& x, std::size_t max_terms)
{
    if (max_terms == 0)
        throw domain_error("expand: max_terms must be positive");
    CFExpansion out{x.p(), {}, false, "p-adic approximation"};
    PAdic xi = x;
    for (std::size_t k = 0; k < max_terms; ++k) {
        PartialQuotient a = head(xi, k);
        if (xi.is_zero()) {
            out.quotients.push_back(std::move(a));
            out.terminated = true;
            break;
        }
        PAdic rest = xi;
        if (!a.value.is_zero()) {
            if (xi.absolute_precision() <= 1)
                throw precision_error("expand: no digits of xi_" + std::to_string(k) +
                                          " remain beyond its head",
                                      static_cast<long>(k));
            try {
                rest = xi - PAdic::from_rational_absolute(a.value, x.p(), xi.absolute_precision());
            } catch (const precision_error&) {
                throw precision_error("expand: xi_" + std::to_string(k) +
                                          " equals its head to every known digit",
                                      static_cast<long>(k));
            }
        }
        out.quotients.push_back(std::move(a));
        xi = rest.reciprocal();
    }
    return out;
}

/// Recurrence p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}
/// seeded with p_{-1} = 1, p_0 = a_0, q_{-1} = 0, q_0 = 1.
inline std::vector<Convergent> convergents(std::span<const PartialQuotient> quotients)
{
    if (quotients.empty())
        throw domain_error("convergents: empty quotient list");
    std::vector<Convergent> out;
    out.reserve(quotients.size());
    Rational p_prev(1), q_prev(0);
    Rational p_cur = quotients[0].value, q_cur(1);
    for (std::size_t n = 0; n < quotients.size(); ++n) {
        if (n > 0) {
            const Rational& a = quotients[n].value;
            Rational p_next = a * p_cur + p_prev;
            Rational q_next = a * q_cur + q_prev;
            p_prev = std::exchange(p_cur, std::move(p_next));
            q_prev = std::exchange(q_cur, std::move(q_next));
        }
        const Rational reduced = p_cur / q_cur;
        out.push_back({n, p_cur, q_cur, reduced.num(), reduced.den()});
    }
    return out;
}

/// Value of the finite continued fraction [a_0; a_1, ..., a_n].
inline Rational evaluate(std::span<const PartialQuotient> quotients)
{
    if (quotients.empty())
        throw domain_error("evaluate: empty quotient list");
    for (std::size_t k = 1; k < quotients.size(); ++k)
        if (quotients[k].value.is_zero())
            throw domain_error("evaluate: partial quotient " + std::to_string(k) + " is zero");
    const auto c = convergents(quotients);
    return c.back().p_n / c.back().q_n;
}

} // namespace padiccf

#endif
