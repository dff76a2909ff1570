#ifndef PADICCF_LEMMAS_HPP
#define PADICCF_LEMMAS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "padiccf/cf.hpp"

namespace padiccf {

enum class check_status { holds, fails, not_applicable };

inline std::string_view to_string(check_status s)
{
    switch (s) {
    case check_status::holds: return "holds";
    case check_status::fails: return "fails";
    case check_status::not_applicable: return "not_applicable";
    }
    return "unknown";
}

/// One identity or bound evaluated at one index; lhs and rhs are exact
/// rational strings.
struct IdentityCheck {
    std::size_t n = 0;
    std::string identity;
    check_status status = check_status::not_applicable;
    std::string lhs;
    std::string rhs;
};

struct VerifierReport {
    std::vector<IdentityCheck> checks;

    bool all_hold() const
    {
        return std::none_of(checks.begin(), checks.end(),
                            [](const auto& c) { return c.status == check_status::fails; });
    }

    std::size_t count(check_status s) const
    {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
    }
};

namespace detail {

inline check_status verdict(bool ok) { return ok ? check_status::holds : check_status::fails; }

// |x|_p as an exact rational (0 for x = 0).
inline Rational norm_of_valuation(std::uint64_t p, long v)
{
    return v == infinite_valuation ? Rational() : prime_power(p, -v);
}

inline long sum_valuations(std::span<const PartialQuotient> qs, std::size_t from, std::size_t to, std::uint64_t p)
{
    long s = 0;
    for (std::size_t k = from; k <= to && k < qs.size(); ++k) {
        const long v = valuation(qs[k].value, p);
        if (v == infinite_valuation)
            return infinite_valuation;
        s += v;
    }
    return s;
}

} // namespace detail

/// Checks, for each index n of an expansion of the exact rational x:
///  (i)   |p_n|_p = |a_0...a_n|_p  (a_0 != 0), or |p_1|_p = 1 and
///        |p_n|_p = |a_2...a_n|_p  (a_0 = 0);
///  (ii)  |q_n|_p = |a_1...a_n|_p;
///  (iii) x - p_n/q_n = (-1)^n / (q_n (xi_{n+1} q_n + q_{n-1}));
///  (iv)  |x - p_n/q_n|_p = 1 / |q_n q_{n+1}|_p.
/// The complete quotients xi_{n+1} are recomputed from x by forward iteration,
/// independently of the convergent recurrence.
inline VerifierReport verify_lemma1(const CFExpansion& expansion, const Rational& x)
{
    const std::uint64_t p = expansion.p;
    const auto& qs = expansion.quotients;
    const auto conv = convergents(qs);
    const std::size_t len = qs.size();
    const bool a0_zero = qs[0].value.is_zero();

    // xi[k] for k = 0..len (xi[len] exists only if the expansion did not terminate).
    std::vector<std::optional<Rational>> xi(len + 1);
    xi[0] = x;
    for (std::size_t k = 0; k < len; ++k) {
        if (!xi[k])
            break;
        const Rational rest = *xi[k] - qs[k].value;
        if (!rest.is_zero())
            xi[k + 1] = rest.reciprocal();
    }

    VerifierReport rep;
    for (std::size_t n = 0; n < len; ++n) {
        const Convergent& c = conv[n];

        {
            IdentityCheck ck{n, "lemma1.i", check_status::holds, {}, {}};
            const long lhs_v = valuation(c.p_n, p);
            long rhs_v;
            if (!a0_zero || n == 0)
                rhs_v = detail::sum_valuations(qs, 0, n, p);
            else if (n == 1)
                rhs_v = 0;
            else
                rhs_v = detail::sum_valuations(qs, 2, n, p);
            ck.status = detail::verdict(lhs_v == rhs_v);
            ck.lhs = detail::norm_of_valuation(p, lhs_v).str();
            ck.rhs = detail::norm_of_valuation(p, rhs_v).str();
            rep.checks.push_back(std::move(ck));
        }
        {
            IdentityCheck ck{n, "lemma1.ii", check_status::holds, {}, {}};
            const long lhs_v = valuation(c.q_n, p);
            const long rhs_v = n == 0 ? 0 : detail::sum_valuations(qs, 1, n, p);
            ck.status = detail::verdict(lhs_v == rhs_v);
            ck.lhs = detail::norm_of_valuation(p, lhs_v).str();
            ck.rhs = detail::norm_of_valuation(p, rhs_v).str();
            rep.checks.push_back(std::move(ck));
        }
        {
            IdentityCheck ck{n, "lemma1.iii", check_status::not_applicable, {}, {}};
            if (xi[n + 1]) {
                const Rational q_prev = n == 0 ? Rational(0) : conv[n - 1].q_n;
                const Rational lhs = x - c.p_n / c.q_n;
                const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
                const Rational rhs = sign / (c.q_n * (*xi[n + 1] * c.q_n + q_prev));
                ck.status = detail::verdict(lhs == rhs);
                ck.lhs = lhs.str();
                ck.rhs = rhs.str();
            }
            rep.checks.push_back(std::move(ck));
        }
        {
            IdentityCheck ck{n, "lemma1.iv", check_status::not_applicable, {}, {}};
            if (n + 1 < len && xi[n + 1]) {
                const Rational err = x - c.p_n / c.q_n;
                const long lhs_v = valuation(err, p);
                const long rhs_v = -(valuation(c.q_n, p) + valuation(conv[n + 1].q_n, p));
                ck.status = detail::verdict(lhs_v == rhs_v);
                ck.lhs = detail::norm_of_valuation(p, lhs_v).str();
                ck.rhs = detail::norm_of_valuation(p, rhs_v).str();
            }
            rep.checks.push_back(std::move(ck));
        }
    }
    return rep;
}

/// Growth of the reduced numerator P_n, logged but not asserted.
struct NumeratorGrowth {
    std::size_t n = 0;
    double log10_abs_P = 0.0; // -inf for P_n = 0
    bool within_bound = false; // |P_n| <= (p+1)^n
};

struct Lemma2Report {
    VerifierReport bounds;
    std::vector<NumeratorGrowth> growth;
};

namespace detail {

inline double log10_abs(const BigInt& v)
{
    if (v == 0)
        return -HUGE_VAL;
    const std::string s = padiccf::abs(v).str();
    const std::size_t keep = std::min<std::size_t>(s.size(), 17);
    return std::log10(std::stod(s.substr(0, keep))) + static_cast<double>(s.size() - keep);
}

} // namespace detail

/// Checks 0 < p_n <= (p+1)^(n+1) and 0 < q_n <= (p+1)^n in the real order
/// (for n = 0 the numerator bound reads 0 <= p_0 <= p+1, since a_0 may be 0).
inline Lemma2Report verify_lemma2(const CFExpansion& expansion)
{
    const std::uint64_t p = expansion.p;
    const auto conv = convergents(expansion.quotients);
    Lemma2Report rep;
    const BigInt base(p + 1);
    for (const auto& c : conv) {
        const Rational p_bound(ipow(base, c.n + 1));
        const Rational q_bound(ipow(base, c.n));
        const bool p_positive = c.n == 0 ? c.p_n.sign() >= 0 : c.p_n.sign() > 0;
        rep.bounds.checks.push_back({c.n, "lemma2.p_bound", detail::verdict(p_positive && c.p_n <= p_bound),
                                     c.p_n.str(), p_bound.str()});
        rep.bounds.checks.push_back({c.n, "lemma2.q_bound", detail::verdict(c.q_n.sign() > 0 && c.q_n <= q_bound),
                                     c.q_n.str(), q_bound.str()});
        rep.growth.push_back({c.n, detail::log10_abs(c.P_n), padiccf::abs(c.P_n) <= q_bound.num()});
    }
    return rep;
}

} // namespace padiccf

#endif
