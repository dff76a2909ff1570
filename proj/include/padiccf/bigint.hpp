#ifndef PADICCF_BIGINT_HPP
#define PADICCF_BIGINT_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "padiccf/errors.hpp"

namespace padiccf {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt& base, std::uint64_t exp)
{
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1U)
            result *= b;
        exp >>= 1U;
        if (exp != 0)
            b *= b;
    }
    return result;
}

inline BigInt ipow(const BigInt& base, const BigInt& exp)
{
    if (exp < 0)
        throw domain_error("ipow: negative exponent");
    if (exp > BigInt(std::numeric_limits<std::uint32_t>::max()))
        throw domain_error("ipow: exponent too large to materialize");
    return ipow(base, static_cast<std::uint64_t>(exp));
}

// Euclidean remainder, always in [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r;
}

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m)
{
    BigInt old_r = mod_floor(a, m), r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = std::move(r);
        r = std::move(t);
        t = old_s - q * s;
        old_s = std::move(s);
        s = std::move(t);
    }
    if (old_r != 1)
        throw arithmetic_error("mod_inverse: value is not invertible");
    return mod_floor(old_s, m);
}

// Largest e with p^e dividing n (n != 0); n is divided in place.
inline long strip_factor(BigInt& n, const BigInt& p)
{
    long e = 0;
    for (;;) {
        BigInt q, r;
        boost::multiprecision::divide_qr(n, p, q, r);
        if (r != 0)
            return e;
        n = std::move(q);
        ++e;
    }
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// p must be an odd prime everywhere in this library.
inline void require_odd_prime(std::uint64_t p)
{
    if (p == 2 || !is_prime(p))
        throw domain_error("p = " + std::to_string(p) + " is not an odd prime");
}

inline BigInt parse_bigint(const std::string& s)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        throw domain_error("malformed integer literal '" + s + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw domain_error("malformed integer literal '" + s + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

} // namespace padiccf

#endif
