#ifndef PADICCF_IO_HPP
#define PADICCF_IO_HPP

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "padiccf/analytic.hpp"
#include "padiccf/cf.hpp"
#include "padiccf/independence.hpp"
#include "padiccf/lemmas.hpp"
#include "padiccf/padic.hpp"
#include "padiccf/valuation.hpp"

// JSON encodings of the library's value types. Exact numbers travel as
// decimal strings so nothing is rounded on the way through.
namespace padiccf::io {

using nlohmann::json;

inline constexpr const char* schema_tag = "padic-cf/1";

inline json valuation_json(long v)
{
    return v == infinite_valuation ? json("inf") : json(v);
}

inline json to_json(const PAdic& x)
{
    if (x.is_zero())
        return {{"p", x.p()}, {"zero", true}, {"val", nullptr}, {"digits", json::array()}, {"prec", 0}};
    return {{"p", x.p()}, {"val", x.valuation()}, {"digits", x.digits()}, {"prec", x.precision()}};
}

inline PAdic padic_from_json(const json& j)
{
    const auto p = j.at("p").get<std::uint64_t>();
    if (j.value("zero", false))
        return PAdic::zero(p);
    return PAdic::from_digits(p, j.at("val").get<long>(), j.at("digits").get<std::vector<std::uint64_t>>(),
                              j.at("prec").get<long>());
}

inline json to_json(const Rational& r) { return {{"num", r.num().str()}, {"den", r.den().str()}}; }

inline json to_json(const CFExpansion& e)
{
    json qs = json::array();
    for (const auto& q : e.quotients)
        qs.push_back(to_json(q.value));
    return {{"p", e.p}, {"terminated", e.terminated}, {"quotients", qs}, {"source", e.source}};
}

/// A quotient entry is either {"num","den"} or the symbolic {"unit","m"},
/// meaning unit * p^(-m).
inline SymbolicQuotient symbolic_from_json(const json& q, std::uint64_t p)
{
    if (q.contains("m")) {
        SymbolicQuotient s{parse_bigint(q.at("unit").get<std::string>()), parse_bigint(q.at("m").get<std::string>())};
        return s;
    }
    const Rational r(parse_bigint(q.at("num").get<std::string>()), parse_bigint(q.at("den").get<std::string>()));
    if (r.is_zero())
        return {0, 0};
    const long v = valuation(r, p);
    const long m = v < 0 ? -v : 0;
    return {(r * prime_power(p, m)).num(), BigInt(m)};
}

inline CFExpansion cf_from_json(const json& j)
{
    CFExpansion e;
    e.p = j.at("p").get<std::uint64_t>();
    require_odd_prime(e.p);
    e.terminated = j.value("terminated", false);
    e.source = j.value("source", std::string("json"));
    const auto& qs = j.at("quotients");
    for (std::size_t k = 0; k < qs.size(); ++k)
        e.quotients.push_back(materialize(symbolic_from_json(qs[k], e.p), e.p, k));
    return e;
}

inline std::vector<SymbolicQuotient> symbolic_sequence_from_json(const json& j, std::uint64_t& p)
{
    p = j.at("p").get<std::uint64_t>();
    require_odd_prime(p);
    std::vector<SymbolicQuotient> out;
    for (const auto& q : j.at("quotients"))
        out.push_back(symbolic_from_json(q, p));
    return out;
}

/// Symbolic sequences print {"unit","m"} always and {"num","den"} when the
/// value is small enough to write out.
inline json sequence_json(const std::vector<SymbolicQuotient>& seq, std::uint64_t p, long inline_limit = 4096)
{
    json qs = json::array();
    for (const auto& q : seq) {
        json e = {{"unit", q.unit.str()}, {"m", q.m.str()}};
        if (q.m <= inline_limit) {
            const Rational r = Rational(q.unit) * prime_power(p, -static_cast<long>(q.m));
            e["num"] = r.num().str();
            e["den"] = r.den().str();
        }
        qs.push_back(std::move(e));
    }
    return qs;
}

inline json to_json(const IdentityCheck& c)
{
    json holds = c.status == check_status::not_applicable ? json(nullptr) : json(c.status == check_status::holds);
    return {{"n", c.n}, {"identity", c.identity}, {"status", std::string(to_string(c.status))},
            {"holds", holds}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}

inline json to_json(const VerifierReport& r)
{
    json arr = json::array();
    for (const auto& c : r.checks)
        arr.push_back(to_json(c));
    return arr;
}

inline json to_json(const Lemma2Report& r)
{
    json growth = json::array();
    for (const auto& g : r.growth)
        growth.push_back({{"n", g.n},
                          {"log10_abs_P", std::isfinite(g.log10_abs_P) ? json(g.log10_abs_P) : json(nullptr)},
                          {"P_le_(p+1)^n", g.within_bound}});
    return {{"bounds", to_json(r.bounds)}, {"numerator_growth", growth}};
}

inline json to_json(const Convergent& c)
{
    return {{"n", c.n}, {"p_n", c.p_n.str()}, {"q_n", c.q_n.str()}, {"P_n", c.P_n.str()}, {"Q_n", c.Q_n.str()}};
}

inline json to_json(const TruncationPlan& t)
{
    return {{"target_precision", t.target_precision},
            {"term_count", t.term_count},
            {"leading_valuation", t.leading_valuation},
            {"justification", t.justification}};
}

inline json to_json(const PlaceReport& r)
{
    json places = json::array();
    for (const auto& f : r.finite_places)
        places.push_back({{"prime", f.prime.str()}, {"norm_exponent", f.norm_exponent}});
    return {{"value", r.value.str()},
            {"archimedean", r.archimedean.str()},
            {"finite_places", places},
            {"product", r.product.str()}};
}

inline json to_json(const GrowthCertificate& c)
{
    json recs = json::array();
    for (const auto& r : c.records)
        recs.push_back({{"n", r.n},
                        {"m_a", r.m_a.str()},
                        {"m_b", r.m_b.str()},
                        {"required", r.required.str()},
                        {"a_dominates_b", r.a_dominates_b},
                        {"b_exceeds_power", r.b_exceeds_power}});
    return {{"p", c.p}, {"alpha", c.alpha.str()}, {"records", recs}, {"overall", c.overall}};
}

inline json to_json(const PowApproximationReport& r)
{
    return {{"n", r.n},
            {"prec", r.precision},
            {"lhs_valuation", r.lhs_valuation},
            {"c3_valuation", valuation_json(r.c3_valuation)},
            {"q_norm_exponent", r.q_norm_exponent.str()},
            {"q_norm_exponent_direct", r.q_norm_exponent_direct},
            {"rhs_valuation", valuation_json(r.rhs_valuation)},
            {"depth_a", r.depth_a},
            {"depth_b", r.depth_b},
            {"a_exact", r.a_exact},
            {"holds", r.holds}};
}

inline json to_json(const ContradictionWitness& w)
{
    return {{"p", w.p},
            {"alpha", w.alpha.str()},
            {"d", w.d},
            {"c6_log", w.c6_log},
            {"n_star", w.n_star},
            {"exponent", w.exponent.str()},
            {"exact_fallback", w.exact_fallback}};
}

} // namespace padiccf::io

#endif
