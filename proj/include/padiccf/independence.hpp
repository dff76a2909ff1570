#ifndef PADICCF_INDEPENDENCE_HPP
#define PADICCF_INDEPENDENCE_HPP

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "padiccf/analytic.hpp"
#include "padiccf/cf.hpp"
#include "padiccf/padic.hpp"
#include "padiccf/rational.hpp"

namespace padiccf {

/// A partial quotient held as unit * p^(-m) with p not dividing unit, so that
/// quotients like 3^(-3^50) can be reasoned about without materializing them.
struct SymbolicQuotient {
    BigInt unit;
    BigInt m;

    friend bool operator==(const SymbolicQuotient&, const SymbolicQuotient&) = default;

    static SymbolicQuotient from(const PartialQuotient& q, std::uint64_t p)
    {
        if (q.value.is_zero())
            return {0, 0};
        return {(q.value * prime_power(p, q.m)).num(), BigInt(q.m)};
    }
};

/// Largest exponent m that materialize() will expand into an exact rational.
inline constexpr long materialize_limit = 1L << 20;

inline PartialQuotient materialize(const SymbolicQuotient& q, std::uint64_t p, std::size_t k)
{
    if (q.m > materialize_limit)
        throw length_error("quotient " + std::to_string(k) + " has |.|_p = p^" + q.m.str() +
                           ", too large to materialize");
    const long m = static_cast<long>(q.m);
    return PartialQuotient::make(Rational(q.unit) * prime_power(p, -m), p, k);
}

/// The expansions of A in 1+pZ_p and B in pZ_p together with the growth rate
/// alpha. a[0] = 1 and b[0] = 0.
struct QuotientPair {
    std::uint64_t p = 3;
    std::vector<SymbolicQuotient> a;
    std::vector<SymbolicQuotient> b;
    Rational alpha;
};

inline void validate_pair(const QuotientPair& pair)
{
    require_odd_prime(pair.p);
    if (pair.a.empty() || pair.a[0] != SymbolicQuotient{1, 0})
        throw domain_error("quotient pair: a_0 must be 1 so that A lies in 1+pZ_p");
    if (pair.b.empty() || pair.b[0] != SymbolicQuotient{0, 0})
        throw domain_error("quotient pair: b_0 must be 0 so that B lies in pZ_p");
    for (const auto* seq : {&pair.a, &pair.b})
        for (std::size_t k = 1; k < seq->size(); ++k) {
            const auto& q = (*seq)[k];
            if (q.m < 1 || q.unit <= 0 || q.unit % pair.p == 0)
                throw domain_error("quotient pair: entry " + std::to_string(k) +
                                   " is not a valid partial quotient");
        }
}

/// Which k_1 seeds the example recurrence k_n = 3 k_{n-1} + 4. `recurrence`
/// uses k_1 = 1; `displayed` starts at k_1 = 7, the indexing under which the
/// closed-form lists [1; 3^-8, 3^-26, ...] and [0; 3^-7, 3^-25, ...] begin
/// at index 1.
enum class example_indexing { recurrence, displayed };

struct ExampleSequences {
    std::vector<BigInt> k; // k[0] is k_1
    QuotientPair pair;
};

/// p = 3, alpha = 3, a_n = 3^(-k_n - 1), b_n = 3^(-k_n).
inline ExampleSequences gen_example(std::size_t n_max, example_indexing idx = example_indexing::recurrence)
{
    if (n_max < 1)
        throw domain_error("gen_example: n_max must be at least 1");
    ExampleSequences out;
    out.pair.p = 3;
    out.pair.alpha = Rational(3);
    out.pair.a.push_back({1, 0});
    out.pair.b.push_back({0, 0});
    BigInt k = idx == example_indexing::recurrence ? 1 : 7;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n > 1)
            k = 3 * k + 4;
        out.k.push_back(k);
        out.pair.a.push_back({1, k + 1});
        out.pair.b.push_back({1, k});
    }
    return out;
}

struct GrowthRecord {
    std::size_t n = 0;
    BigInt m_a;      // -v(a_n)
    BigInt m_b;      // -v(b_n)
    Rational required; // alpha * m_a(n-1)
    bool a_dominates_b = false;  // |a_n|_p >= |b_n|_p
    bool b_exceeds_power = false; // |b_n|_p > |a_{n-1}|_p^alpha
};

struct GrowthCertificate {
    std::uint64_t p = 3;
    Rational alpha;
    std::vector<GrowthRecord> records;
    bool overall = true;
};

/// Checks |a_n|_p >= |b_n|_p > |a_{n-1}|_p^alpha for n = 2..n_max on exact
/// exponents: m_a(n) >= m_b(n) and m_b(n) > alpha * m_a(n-1).
inline GrowthCertificate check_hypotheses(const QuotientPair& pair, std::size_t n_max)
{
    if (pair.alpha <= Rational(2))
        throw domain_error("check_hypotheses: alpha must exceed 2, got " + pair.alpha.str());
    validate_pair(pair);
    if (pair.a.size() < n_max + 1 || pair.b.size() < n_max + 1)
        throw length_error("check_hypotheses: sequences need " + std::to_string(n_max + 1) +
                           " entries, have " + std::to_string(std::min(pair.a.size(), pair.b.size())));
    GrowthCertificate cert{pair.p, pair.alpha, {}, true};
    for (std::size_t n = 2; n <= n_max; ++n) {
        GrowthRecord r;
        r.n = n;
        r.m_a = pair.a[n].m;
        r.m_b = pair.b[n].m;
        r.required = pair.alpha * Rational(pair.a[n - 1].m);
        r.a_dominates_b = r.m_a >= r.m_b;
        r.b_exceeds_power = Rational(r.m_b) > r.required;
        cert.overall = cert.overall && r.a_dominates_b && r.b_exceeds_power;
        cert.records.push_back(std::move(r));
    }
    return cert;
}

struct PowApproximationReport {
    std::size_t n = 0;
    long precision = 0;
    long lhs_valuation = 0;        // v(A^B - A_n^B_n)
    long c3_valuation = 0;         // min(v(C1), v(C2)); infinite_valuation if both vanish
    BigInt q_norm_exponent;        // log_p |bq_n bq_(n+1)|_p from the closed form
    long q_norm_exponent_direct = 0; // same, from the exact convergents
    long rhs_valuation = 0;        // c3_valuation + q_norm_exponent
    std::size_t depth_a = 0;       // number of a-quotients used to materialize A
    std::size_t depth_b = 0;
    bool a_exact = false;          // A is a finite continued fraction
    bool holds = false;
};

namespace detail {

// Index d such that [x_0; ..., x_d] agrees with the limit to absolute
// precision `digits`, using |x - x_d|_p = p^-(2 sum_{j<=d} m_j + m_(d+1)).
// Returns seq.size() - 1 with exact = true when the sequence ends first.
inline std::size_t resolving_depth(const std::vector<SymbolicQuotient>& seq, std::size_t min_depth, long digits,
                                   bool& exact)
{
    BigInt sum = 0;
    for (std::size_t j = 1; j <= min_depth && j < seq.size(); ++j)
        sum += seq[j].m;
    for (std::size_t d = min_depth; d + 1 < seq.size(); ++d) {
        if (2 * sum + seq[d + 1].m >= digits) {
            exact = false;
            return d;
        }
        sum += seq[d + 1].m;
    }
    exact = true;
    return seq.size() - 1;
}

inline std::vector<PartialQuotient> materialize_prefix(const std::vector<SymbolicQuotient>& seq, std::uint64_t p,
                                                       std::size_t depth)
{
    std::vector<PartialQuotient> out;
    for (std::size_t k = 0; k <= depth; ++k)
        out.push_back(materialize(seq[k], p, k));
    return out;
}

} // namespace detail

/// Evaluates both sides of |A^B - A_n^B_n|_p <= C_3 / |bq_n bq_(n+1)|_p with
/// C_3 = max(|C1|_p, |C2|_p) from pow_linearization at (A_n, B_n). A and B are
/// materialized from prefixes deep enough that their tails vanish modulo
/// p^digits.
inline PowApproximationReport verify_pow_approximation(const QuotientPair& pair, std::size_t n, long digits)
{
    validate_pair(pair);
    if (n < 1)
        throw domain_error("verify_pow_approximation: n must be at least 1");
    if (pair.b.size() < n + 2)
        throw length_error("verify_pow_approximation: b_" + std::to_string(n + 1) + " is required");
    if (pair.a.size() < n + 1)
        throw length_error("verify_pow_approximation: a_" + std::to_string(n) + " is required");
    const std::size_t n_check = std::min({n + 1, pair.a.size() - 1, pair.b.size() - 1});
    if (!check_hypotheses(pair, n_check).overall)
        throw domain_error("verify_pow_approximation: growth hypotheses fail through n = " +
                           std::to_string(n_check));

    const std::uint64_t p = pair.p;
    PowApproximationReport rep;
    rep.n = n;
    rep.precision = digits;

    bool b_exact = false;
    rep.depth_a = detail::resolving_depth(pair.a, n, digits, rep.a_exact);
    rep.depth_b = detail::resolving_depth(pair.b, n + 1, digits, b_exact);
    const auto a_q = detail::materialize_prefix(pair.a, p, rep.depth_a);
    const auto b_q = detail::materialize_prefix(pair.b, p, rep.depth_b);
    const auto a_conv = convergents(a_q);
    const auto b_conv = convergents(b_q);

    const Rational a_lim = a_conv.back().p_n / a_conv.back().q_n;
    const Rational b_lim = b_conv.back().p_n / b_conv.back().q_n;
    const Rational a_n = a_conv[n].p_n / a_conv[n].q_n;
    const Rational b_n = b_conv[n].p_n / b_conv[n].q_n;

    const PAdic a_pad = PAdic::from_rational_absolute(a_lim, p, digits);
    const PAdic b_pad = b_lim.is_zero() ? PAdic::zero(p) : PAdic::from_rational_absolute(b_lim, p, digits);
    const PAdic lhs_full = pow_p(a_pad, b_pad, digits);
    const PAdic lhs_trunc = pow_p(a_n, b_n, p, digits);
    try {
        rep.lhs_valuation = (lhs_full - lhs_trunc).valuation();
    } catch (const precision_error&) {
        throw precision_error("verify_pow_approximation: A^B and A_n^B_n agree to all " + std::to_string(digits) +
                                  " digits",
                              static_cast<long>(n), 2 * digits);
    }

    const auto lin = pow_linearization(a_n, b_n, p, digits);
    rep.c3_valuation = std::min(lin.c1.valuation(), lin.c2.valuation());

    BigInt sum = 0;
    for (std::size_t j = 1; j <= n; ++j)
        sum += pair.b[j].m;
    rep.q_norm_exponent = 2 * sum + pair.b[n + 1].m;
    rep.q_norm_exponent_direct = -(valuation(b_conv[n].q_n, p) + valuation(b_conv[n + 1].q_n, p));

    if (rep.c3_valuation == infinite_valuation) {
        rep.rhs_valuation = infinite_valuation;
        rep.holds = false;
    } else {
        rep.rhs_valuation = rep.c3_valuation + static_cast<long>(rep.q_norm_exponent);
        rep.holds = rep.lhs_valuation >= rep.rhs_valuation;
    }
    return rep;
}

/// One monomial coeff * X^kx Y^ky Z^kz of an integer polynomial in three variables.
struct Monomial {
    BigInt coeff;
    unsigned kx = 0;
    unsigned ky = 0;
    unsigned kz = 0;
};

using Polynomial3 = std::vector<Monomial>;

struct Triple {
    Rational x, y, z;
};

inline Rational evaluate(const Polynomial3& poly, const Triple& t)
{
    Rational acc;
    for (const auto& mono : poly)
        acc += Rational(mono.coeff) * pow(t.x, mono.kx) * pow(t.y, mono.ky) * pow(t.z, mono.kz);
    return acc;
}

struct PerturbationReport {
    long lhs_valuation = 0; // v(Q(x) - Q(x'))
    long rhs_valuation = 0; // min_i v(x_i - x'_i)
    bool holds = false;
};

/// Ultrametric form of the mean-value bound with C = 1:
/// |Q(x) - Q(x')|_p <= max_i |x_i - x'_i|_p for integral points.
inline PerturbationReport polynomial_perturbation_check(const Polynomial3& poly, const Triple& x, const Triple& xp,
                                                        std::uint64_t p)
{
    require_odd_prime(p);
    for (const Rational* c : {&x.x, &x.y, &x.z, &xp.x, &xp.y, &xp.z})
        if (valuation(*c, p) < 0)
            throw domain_error("polynomial_perturbation_check: coordinate " + c->str() + " is not in Z_p");
    PerturbationReport rep;
    rep.lhs_valuation = valuation(evaluate(poly, x) - evaluate(poly, xp), p);
    rep.rhs_valuation = std::min({valuation(x.x - xp.x, p), valuation(x.y - xp.y, p), valuation(x.z - xp.z, p)});
    rep.holds = rep.lhs_valuation >= rep.rhs_valuation;
    return rep;
}

struct ContradictionWitness {
    std::uint64_t p = 3;
    Rational alpha;
    unsigned d = 1;
    double c6_log = 0.0;
    std::size_t n_star = 0;
    Rational exponent; // E(n_star) = 2 sum_{k<n} alpha^k + alpha^n
    bool exact_fallback = false; // some index needed the exact comparison
};

/// E(n) = 2 * sum_{k=0}^{n-1} alpha^k + alpha^n.
inline Rational witness_exponent(const Rational& alpha, std::size_t n)
{
    Rational sum, power(1);
    for (std::size_t k = 0; k < n; ++k) {
        sum += power;
        power *= alpha;
    }
    return 2 * sum + power;
}

namespace detail {

struct interval {
    double lo;
    double hi;
};

inline double widen_down(double x)
{
    return std::nextafter(x - std::abs(x) * 4 * DBL_EPSILON, -HUGE_VAL);
}

inline double widen_up(double x)
{
    return std::nextafter(x + std::abs(x) * 4 * DBL_EPSILON, HUGE_VAL);
}

inline interval enclose(const Rational& r)
{
    // r > 0 here.
    const long bits = static_cast<long>(boost::multiprecision::msb(r.num())) -
                      static_cast<long>(boost::multiprecision::msb(r.den()));
    if (bits > 1000)
        return {1e300, HUGE_VAL};
    if (bits < -1000)
        return {0.0, 1e-300};
    const long shift = std::max(0L, static_cast<long>(boost::multiprecision::msb(r.den())) - 900);
    const double num = static_cast<double>(BigInt(r.num() >> shift));
    const double den = static_cast<double>(BigInt(r.den() >> shift));
    const double q = num / den;
    // Truncating both sides by the same shift perturbs the ratio by at most
    // 2^-(bits kept), far inside the widening below.
    return {widen_down(widen_down(q)), widen_up(widen_up(q))};
}

inline interval log_enclosure(double v)
{
    const double l = std::log(v);
    return {widen_down(l), widen_up(l)};
}

// Sign of E ln p - (c6_log + nd ln(p+1)) using 100-digit binary floats, or 0
// when still undecided.
inline int high_precision_sign(const Rational& e, std::uint64_t p, std::uint64_t nd, double c6_log)
{
    using F = boost::multiprecision::cpp_bin_float_100;
    const F lhs = F(e.num()) / F(e.den()) * boost::multiprecision::log(F(p));
    const F rhs = F(c6_log) + F(nd) * boost::multiprecision::log(F(p + 1));
    const F diff = lhs - rhs;
    const F tol = F(1e-80) * (boost::multiprecision::abs(lhs) + boost::multiprecision::abs(rhs) + 1);
    if (diff > tol)
        return 1;
    if (diff < -tol)
        return -1;
    return 0;
}

} // namespace detail

/// Smallest n <= n_cap with p^E(n) > C6 (p+1)^(n d), i.e.
/// E(n) ln p > c6_log + n d ln(p+1). Each index is decided with outward-rounded
/// double intervals; ties fall back to exact integer powers when c6_log = 0
/// and to 100-digit arithmetic otherwise.
inline ContradictionWitness contradiction_witness(std::uint64_t p, const Rational& alpha, unsigned d, double c6_log,
                                                  std::size_t n_cap)
{
    require_odd_prime(p);
    if (alpha <= Rational(2))
        throw domain_error("contradiction_witness: alpha must exceed 2, got " + alpha.str());
    if (d < 1)
        throw domain_error("contradiction_witness: degree must be positive");
    if (!(c6_log >= 0.0) || !std::isfinite(c6_log))
        throw domain_error("contradiction_witness: C6_log must be a finite nonnegative real");

    ContradictionWitness w{p, alpha, d, c6_log, 0, {}, false};
    const auto ln_p = detail::log_enclosure(static_cast<double>(p));
    const auto ln_q = detail::log_enclosure(static_cast<double>(p + 1));

    Rational sum, power(1);
    for (std::size_t n = 1; n <= n_cap; ++n) {
        sum += power;
        power *= alpha;
        const Rational e = 2 * sum + power;
        const auto ei = detail::enclose(e);
        const double nd = static_cast<double>(n) * d;
        const double lhs_lo = detail::widen_down(ei.lo * ln_p.lo);
        const double lhs_hi = detail::widen_up(ei.hi * ln_p.hi);
        const double rhs_lo = detail::widen_down(c6_log + detail::widen_down(nd * ln_q.lo));
        const double rhs_hi = detail::widen_up(c6_log + detail::widen_up(nd * ln_q.hi));

        bool found;
        if (lhs_lo > rhs_hi) {
            found = true;
        } else if (lhs_hi < rhs_lo) {
            found = false;
        } else {
            w.exact_fallback = true;
            if (c6_log == 0.0) {
                // p^(num/den) > (p+1)^(nd)  <=>  p^num > (p+1)^(nd * den)
                const std::uint64_t nd_int = static_cast<std::uint64_t>(n) * d;
                found = ipow(BigInt(p), e.num()) > ipow(BigInt(p + 1), BigInt(e.den() * nd_int));
            } else {
                const int s = detail::high_precision_sign(e, p, static_cast<std::uint64_t>(n) * d, c6_log);
                if (s == 0)
                    throw precision_error("contradiction_witness: cannot decide index " + std::to_string(n),
                                          static_cast<long>(n));
                found = s > 0;
            }
        }
        if (found) {
            w.n_star = n;
            w.exponent = e;
            return w;
        }
    }
    throw not_found_error("contradiction_witness: no witness up to n = " + std::to_string(n_cap));
}

} // namespace padiccf

#endif
