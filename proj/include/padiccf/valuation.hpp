#ifndef PADICCF_VALUATION_HPP
#define PADICCF_VALUATION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "padiccf/bigint.hpp"
#include "padiccf/rational.hpp"

namespace padiccf {

/// Valuation of exact zero.
inline constexpr long infinite_valuation = std::numeric_limits<long>::max();

/// v_p(x): the exponent of p in x, or infinite_valuation for x = 0.
inline long valuation(const Rational& x, std::uint64_t p)
{
    require_odd_prime(p);
    if (x.is_zero())
        return infinite_valuation;
    BigInt n = x.num(), d = x.den();
    const BigInt bp(p);
    return strip_factor(n, bp) - strip_factor(d, bp);
}

/// Valuation of a rational in base p without the odd-prime restriction, used
/// by the product formula over every prime.
inline long valuation_any(const Rational& x, const BigInt& prime)
{
    if (x.is_zero())
        return infinite_valuation;
    BigInt n = x.num(), d = x.den();
    return strip_factor(n, prime) - strip_factor(d, prime);
}

/// Splits a nonzero x as p^v * unit with the unit a p-adic unit.
struct UnitSplit {
    long valuation;
    Rational unit;
};

inline UnitSplit split_unit(const Rational& x, std::uint64_t p)
{
    if (x.is_zero())
        throw zero_input_error("split_unit: zero has no unit part");
    BigInt n = x.num(), d = x.den();
    const BigInt bp(p);
    const long vn = strip_factor(n, bp);
    const long vd = strip_factor(d, bp);
    return {vn - vd, Rational(std::move(n), std::move(d))};
}

/// The residue of a p-adic unit u = n/d modulo `modulus` (a power of p).
inline BigInt unit_residue(const Rational& unit, const BigInt& modulus)
{
    return mod_floor(unit.num() * mod_inverse(unit.den(), modulus), modulus);
}

struct HenselDigits {
    long valuation = 0;
    std::vector<std::uint64_t> digits; // digits[i] is the coefficient of p^(valuation + i)
};

/// First `count` base-p digits of x starting from its leading (nonzero) digit.
inline HenselDigits hensel_digits(const Rational& x, std::uint64_t p, std::size_t count)
{
    require_odd_prime(p);
    if (x.is_zero())
        throw zero_input_error("hensel_digits: zero has no leading digit");
    if (count == 0)
        throw domain_error("hensel_digits: count must be positive");
    const auto [v, unit] = split_unit(x, p);
    const BigInt bp(p);
    BigInt r = unit_residue(unit, ipow(bp, static_cast<std::uint64_t>(count)));
    HenselDigits out{v, {}};
    out.digits.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        BigInt q, d;
        boost::multiprecision::divide_qr(r, bp, q, d);
        out.digits.push_back(static_cast<std::uint64_t>(d));
        r = std::move(q);
    }
    return out;
}

namespace detail {

inline BigInt pollard_brent(const BigInt& n, std::mt19937_64& rng)
{
    if (n % 2 == 0)
        return 2;
    std::uniform_int_distribution<std::uint64_t> dist(1, std::numeric_limits<std::uint32_t>::max());
    for (;;) {
        const BigInt c = dist(rng) % n;
        BigInt y = dist(rng) % n, x, ys, g = 1, q = 1;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (y * y + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * padiccf::abs(BigInt(x - y))) % n;
                }
                g = boost::multiprecision::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = boost::multiprecision::gcd(padiccf::abs(BigInt(x - ys)), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(BigInt n, std::map<BigInt, long>& out, std::mt19937_64& rng)
{
    for (std::uint64_t d = 2; d < 1000 && n > 1; ++d) {
        while (n % d == 0) {
            ++out[BigInt(d)];
            n /= d;
        }
    }
    if (n == 1)
        return;
    if (boost::multiprecision::miller_rabin_test(n, 32, rng)) {
        ++out[n];
        return;
    }
    const BigInt f = pollard_brent(n, rng);
    factor_into(f, out, rng);
    factor_into(n / f, out, rng);
}

} // namespace detail

/// Prime factorization of |n| (n != 0), primes ascending.
inline std::vector<std::pair<BigInt, long>> factorize(const BigInt& n)
{
    std::map<BigInt, long> acc;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    detail::factor_into(padiccf::abs(n), acc, rng);
    return {acc.begin(), acc.end()};
}

struct FinitePlace {
    BigInt prime;
    long norm_exponent; // |x|_prime = prime^norm_exponent
};

struct PlaceReport {
    Rational value;
    Rational archimedean;
    std::vector<FinitePlace> finite_places;
    Rational product;
};

/// Evaluates |x| times every |x|_q over the primes q dividing x; the product
/// is computed exactly and is 1 for every nonzero rational.
inline PlaceReport product_formula_check(const Rational& x)
{
    if (x.is_zero())
        throw zero_input_error("product formula is undefined at zero");
    PlaceReport rep{x, abs(x), {}, Rational(1)};
    std::map<BigInt, long> exps;
    for (const auto& [q, e] : factorize(x.num()))
        exps[q] -= e;
    for (const auto& [q, e] : factorize(x.den()))
        exps[q] += e;
    Rational prod = rep.archimedean;
    for (const auto& [q, e] : exps) {
        rep.finite_places.push_back({q, e});
        prod *= e >= 0 ? Rational(ipow(q, static_cast<std::uint64_t>(e)))
                       : Rational(BigInt(1), ipow(q, static_cast<std::uint64_t>(-e)));
    }
    rep.product = std::move(prod);
    return rep;
}

} // namespace padiccf

#endif
