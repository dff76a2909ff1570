#ifndef PADICCF_TOOLS_CLI_HPP
#define PADICCF_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "padiccf/io.hpp"
#include "padiccf/padiccf.hpp"

namespace padiccf::cli {

using nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw usage_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw usage_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline Rational parse_rational(const std::string& s, const char* flag)
{
    try {
        return Rational::parse(s);
    } catch (const error& e) {
        throw usage_error(std::string(flag) + ": " + e.what());
    }
}

inline std::vector<PartialQuotient> parse_quotient_list(const std::string& s, std::uint64_t p)
{
    std::vector<PartialQuotient> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(PartialQuotient::make(parse_rational(item, "--quotients"), p, out.size()));
    if (out.empty())
        throw usage_error("--quotients: empty list");
    return out;
}

// Human-readable rendering of a result tree.
inline void render(const json& j, std::ostream& os, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto all_scalar = [](const json& arr) {
        return std::all_of(arr.begin(), arr.end(), [](const json& e) { return e.is_primitive(); });
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_primitive()) {
                os << pad << k << ": " << scalar(v) << '\n';
            } else if (v.is_array() && all_scalar(v)) {
                os << pad << k << ": [";
                for (std::size_t i = 0; i < v.size(); ++i)
                    os << (i ? ", " : "") << scalar(v[i]);
                os << "]\n";
            } else {
                os << pad << k << ":\n";
                render(v, os, indent + 1);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_primitive()) {
                os << pad << "- " << scalar(v) << '\n';
            } else {
                os << pad << "-\n";
                render(v, os, indent + 1);
            }
        }
    } else {
        os << pad << scalar(j) << '\n';
    }
}

inline long default_prec()
{
    const char* env = std::getenv("PADIC_CF_PREC");
    if (env == nullptr || *env == '\0')
        return default_precision;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1)
        throw usage_error(std::string("PADIC_CF_PREC must be a positive integer, got '") + env + "'");
    return v;
}

inline void check_prime(std::uint64_t p)
{
    if (p == 2 || !is_prime(p))
        throw usage_error("--p " + std::to_string(p) + " is not an odd prime");
}

} // namespace detail

/// Runs one invocation. `args` excludes the program name. The result (JSON,
/// or text with --pretty) goes to `out`; errors go to `err` as a JSON object.
/// Exit codes: 0 success, 1 domain/precision failure, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"p-adic continued fractions: expansion, convergents, analytic functions and independence checks",
                 "padic-cf"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    bool pretty = false;
    bool verbose = false;
    std::string out_path;
    std::optional<long> prec_flag;
    app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");
    app.add_flag("--verbose", verbose, "Include truncation plans and diagnostics");
    app.add_option("--out", out_path, "Write the result to PATH instead of stdout");

    std::uint64_t p = 0;
    std::string x_str, digits_file, quotients_str, in_file, a_str, b_str, alpha_str, a_file, b_file;
    std::string indexing_str = "recurrence";
    std::size_t terms = 10, n = 0, random_count = 0, n_cap = 1000;
    unsigned seed = 0, degree = 0;
    double c6_log = 0.0;

    auto add_p = [&](CLI::App* sc, bool required) {
        auto* o = sc->add_option("--p", p, "Odd prime");
        if (required)
            o->required();
        return o;
    };
    auto add_prec = [&](CLI::App* sc) {
        sc->add_option("--prec", prec_flag, "Significant p-adic digits (default 64 or $PADIC_CF_PREC)")->check(CLI::PositiveNumber);
    };
    const auto indexing_check = CLI::IsMember({"recurrence", "displayed"});

    auto* c_expand = app.add_subcommand("expand", "Continued fraction expansion of a rational or p-adic digit input");
    add_p(c_expand, false);
    auto* o_expand_x = c_expand->add_option("--x", x_str, "Rational input num/den");
    auto* o_expand_df = c_expand->add_option("--digits-file", digits_file, "PAdicApprox JSON input");
    o_expand_x->excludes(o_expand_df);
    c_expand->add_option("--terms", terms, "Maximum number of partial quotients")->check(CLI::PositiveNumber);

    auto* c_eval = app.add_subcommand("eval", "Value of a finite continued fraction");
    add_p(c_eval, false);
    auto* o_eval_q = c_eval->add_option("--quotients", quotients_str, "Comma-separated partial quotients");
    auto* o_eval_in = c_eval->add_option("--in", in_file, "CFExpansion JSON file");
    o_eval_q->excludes(o_eval_in);

    auto* c_conv = app.add_subcommand("convergents", "Convergents p_n/q_n and reduced P_n/Q_n");
    add_p(c_conv, false);
    auto* o_conv_q = c_conv->add_option("--quotients", quotients_str, "Comma-separated partial quotients");
    auto* o_conv_in = c_conv->add_option("--in", in_file, "CFExpansion JSON file");
    auto* o_conv_x = c_conv->add_option("--x", x_str, "Rational to expand first");
    o_conv_q->excludes(o_conv_in)->excludes(o_conv_x);
    o_conv_in->excludes(o_conv_x);
    c_conv->add_option("--terms", terms, "Terms when expanding --x")->check(CLI::PositiveNumber);

    auto* c_lemmas = app.add_subcommand("verify-lemmas", "Check the convergent identities and growth bounds");
    add_p(c_lemmas, false);
    auto* o_lem_x = c_lemmas->add_option("--x", x_str, "Rational input num/den");
    auto* o_lem_rand = c_lemmas->add_option("--random", random_count, "Check this many random rationals instead");
    o_lem_x->excludes(o_lem_rand);
    c_lemmas->add_option("--terms", terms, "Expansion length")->check(CLI::PositiveNumber);
    c_lemmas->add_option("--seed", seed, "Seed for --random");

    auto* c_log = app.add_subcommand("log", "p-adic logarithm on 1+pZ_p");
    add_p(c_log, false);
    auto* o_log_x = c_log->add_option("--x", x_str, "Rational argument");
    o_log_x->excludes(c_log->add_option("--digits-file", digits_file, "PAdicApprox JSON argument"));
    add_prec(c_log);

    auto* c_exp = app.add_subcommand("exp", "p-adic exponential on pZ_p");
    add_p(c_exp, false);
    auto* o_exp_x = c_exp->add_option("--x", x_str, "Rational argument");
    o_exp_x->excludes(c_exp->add_option("--digits-file", digits_file, "PAdicApprox JSON argument"));
    add_prec(c_exp);

    auto* c_pow = app.add_subcommand("pow", "A^B = exp(B log A)");
    add_p(c_pow, true);
    c_pow->add_option("--a", a_str, "Base in 1+pZ_p")->required();
    c_pow->add_option("--b", b_str, "Exponent in pZ_p")->required();
    add_prec(c_pow);

    auto* c_sqrt = app.add_subcommand("sqrt", "p-adic square root");
    add_p(c_sqrt, true);
    c_sqrt->add_option("--x", x_str, "Rational radicand")->required();
    add_prec(c_sqrt);

    auto* c_example = app.add_subcommand("example", "The p = 3, alpha = 3 example pair");
    c_example->add_option("--n", n, "Number of terms")->required()->check(CLI::PositiveNumber);
    c_example->add_option("--indexing", indexing_str, "recurrence (k_1 = 1) or displayed (k_1 = 7)")
        ->check(indexing_check);

    auto* c_check = app.add_subcommand("check", "Growth certificate for a quotient pair");
    c_check->add_option("--alpha", alpha_str, "Growth exponent > 2")->required();
    c_check->add_option("--n", n, "Check indices 2..n (default 50)");
    auto* o_chk_a = c_check->add_option("--a-file", a_file, "CFExpansion JSON for A");
    auto* o_chk_b = c_check->add_option("--b-file", b_file, "CFExpansion JSON for B");
    o_chk_a->needs(o_chk_b);
    o_chk_b->needs(o_chk_a);
    c_check->add_option("--indexing", indexing_str, "Example indexing when no files are given")
        ->check(indexing_check);

    auto* c_powapprox = app.add_subcommand("pow-approx", "Check |A^B - A_n^B_n|_p <= C3 / |bq_n bq_(n+1)|_p");
    c_powapprox->add_option("--n", n, "Convergent index (default 2)");
    add_prec(c_powapprox);
    auto* o_pa_a = c_powapprox->add_option("--a-file", a_file, "CFExpansion JSON for A");
    auto* o_pa_b = c_powapprox->add_option("--b-file", b_file, "CFExpansion JSON for B");
    o_pa_a->needs(o_pa_b);
    o_pa_b->needs(o_pa_a);
    c_powapprox->add_option("--alpha", alpha_str, "Growth exponent used to validate the pair (default 3)");
    c_powapprox->add_option("--indexing", indexing_str, "Example indexing when no files are given")
        ->check(indexing_check);

    auto* c_witness = app.add_subcommand("witness", "Smallest n where p^E(n) > C6 (p+1)^(n d)");
    add_p(c_witness, true);
    c_witness->add_option("--alpha", alpha_str, "Growth exponent > 2")->required();
    c_witness->add_option("--d", degree, "Polynomial degree")->required()->check(CLI::PositiveNumber);
    c_witness->add_option("--c6-log", c6_log, "ln C6 (default 0)")->check(CLI::NonNegativeNumber);
    c_witness->add_option("--n-cap", n_cap, "Largest index searched")->check(CLI::PositiveNumber);

    auto* c_pf = app.add_subcommand("product-formula", "Archimedean and p-adic norms of a rational");
    c_pf->add_option("--x", x_str, "Nonzero rational")->required();

    auto emit_error = [&](const std::string& kind, const std::string& message, const json& extra) {
        json e = {{"kind", kind}, {"message", message}};
        for (const auto& [k, v] : extra.items())
            e[k] = v;
        err << json{{"schema", io::schema_tag}, {"error", e}}.dump() << '\n';
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what(), json::object());
        return exit_usage;
    }

    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    json result;
    try {
        const long prec = prec_flag ? *prec_flag : detail::default_prec();
        auto need_p = [&]() {
            if (p == 0)
                throw usage_error("--p is required");
            detail::check_prime(p);
            return p;
        };
        auto load_quotients = [&]() {
            if (!in_file.empty()) {
                const CFExpansion e = io::cf_from_json(detail::read_json_file(in_file));
                if (p != 0 && p != e.p)
                    throw usage_error("--p disagrees with the prime in '" + in_file + "'");
                p = e.p;
                return e.quotients;
            }
            if (quotients_str.empty())
                throw usage_error("one of --quotients or --in is required");
            return detail::parse_quotient_list(quotients_str, need_p());
        };
        auto load_digits = [&]() {
            const PAdic x = io::padic_from_json(detail::read_json_file(digits_file));
            if (p != 0 && p != x.p())
                throw usage_error("--p disagrees with the prime in '" + digits_file + "'");
            p = x.p();
            return x;
        };
        auto indexing = [&]() {
            return indexing_str == "displayed" ? example_indexing::displayed : example_indexing::recurrence;
        };
        auto load_pair = [&](std::size_t default_n, const Rational& alpha) {
            QuotientPair pair;
            if (!a_file.empty()) {
                std::uint64_t pa = 0, pb = 0;
                pair.a = io::symbolic_sequence_from_json(detail::read_json_file(a_file), pa);
                pair.b = io::symbolic_sequence_from_json(detail::read_json_file(b_file), pb);
                if (pa != pb)
                    throw usage_error("--a-file and --b-file use different primes");
                pair.p = pa;
            } else {
                pair = gen_example(default_n, indexing()).pair;
            }
            pair.alpha = alpha;
            return pair;
        };

        if (name == "expand") {
            if (x_str.empty() == digits_file.empty())
                throw usage_error("exactly one of --x or --digits-file is required");
            if (!x_str.empty())
                result = io::to_json(expand(detail::parse_rational(x_str, "--x"), need_p(), terms));
            else
                result = io::to_json(expand(load_digits(), terms));
        } else if (name == "eval") {
            const auto qs = load_quotients();
            const Rational v = evaluate(qs);
            result = {{"p", p}, {"value", v.str()}, {"num", v.num().str()}, {"den", v.den().str()}};
        } else if (name == "convergents") {
            std::vector<PartialQuotient> qs;
            if (!x_str.empty())
                qs = expand(detail::parse_rational(x_str, "--x"), need_p(), terms).quotients;
            else
                qs = load_quotients();
            json arr = json::array();
            for (const auto& c : convergents(qs))
                arr.push_back(io::to_json(c));
            result = {{"p", p}, {"convergents", arr}};
        } else if (name == "verify-lemmas") {
            auto verify_one = [&](const Rational& x, std::uint64_t prime) {
                const CFExpansion e = expand(x, prime, terms);
                const VerifierReport l1 = verify_lemma1(e, x);
                const Lemma2Report l2 = verify_lemma2(e);
                return std::make_tuple(e, l1, l2);
            };
            if (random_count == 0) {
                if (x_str.empty())
                    throw usage_error("one of --x or --random is required");
                const auto [e, l1, l2] = verify_one(detail::parse_rational(x_str, "--x"), need_p());
                result = {{"expansion", io::to_json(e)},
                          {"lemma1", io::to_json(l1)},
                          {"lemma2", io::to_json(l2)},
                          {"all_hold", l1.all_hold() && l2.bounds.all_hold()}};
            } else {
                if (p != 0)
                    detail::check_prime(p);
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<long long> num(-1000000, 1000000);
                std::uniform_int_distribution<long long> den(1, 1000000);
                const std::uint64_t primes[] = {3, 5, 7};
                json items = json::array();
                bool all = true;
                for (std::size_t i = 0; i < random_count; ++i) {
                    const std::uint64_t prime = p != 0 ? p : primes[i % 3];
                    const long long a = num(rng);
                    const long long b = den(rng);
                    const Rational x{BigInt(a), BigInt(b)};
                    const auto [e, l1, l2] = verify_one(x, prime);
                    const bool ok = l1.all_hold() && l2.bounds.all_hold();
                    all = all && ok;
                    items.push_back({{"x", x.str()},
                                     {"p", prime},
                                     {"terms", e.quotients.size()},
                                     {"terminated", e.terminated},
                                     {"checked", l1.checks.size() + l2.bounds.checks.size()},
                                     {"not_applicable", l1.count(check_status::not_applicable)},
                                     {"all_hold", ok}});
                }
                result = {{"seed", seed}, {"inputs", items}, {"all_hold", all}};
            }
        } else if (name == "log" || name == "exp") {
            if (x_str.empty() == digits_file.empty())
                throw usage_error("exactly one of --x or --digits-file is required");
            TruncationPlan plan;
            PAdic v = PAdic::zero(3);
            const bool is_log = name == "log";
            if (!x_str.empty()) {
                const Rational x = detail::parse_rational(x_str, "--x");
                v = is_log ? log_p(x, need_p(), prec, &plan) : exp_p(x, need_p(), prec, &plan);
            } else {
                const PAdic x = load_digits();
                v = is_log ? log_p(x, prec, &plan) : exp_p(x, prec, &plan);
            }
            result = {{"value", io::to_json(v)}, {"rational", v.to_rational().str()}};
            if (verbose)
                result["plan"] = io::to_json(plan);
        } else if (name == "pow") {
            const PAdic v =
                pow_p(detail::parse_rational(a_str, "--a"), detail::parse_rational(b_str, "--b"), need_p(), prec);
            result = {{"value", io::to_json(v)}, {"rational", v.to_rational().str()}};
        } else if (name == "sqrt") {
            const PAdic v = sqrt_p(detail::parse_rational(x_str, "--x"), need_p(), prec);
            result = {{"value", io::to_json(v)}, {"rational", v.to_rational().str()}};
        } else if (name == "example") {
            const ExampleSequences ex = gen_example(n, indexing());
            json ks = json::array(), a_norm = json::array(), b_norm = json::array();
            for (const auto& k : ex.k) {
                ks.push_back(k.str());
                a_norm.push_back(BigInt(k + 1).str());
                b_norm.push_back(k.str());
            }
            result = {{"p", 3},
                      {"alpha", "3/1"},
                      {"indexing", indexing_str},
                      {"k", ks},
                      {"a_norm_exponents", a_norm},
                      {"b_norm_exponents", b_norm},
                      {"a", {{"p", 3}, {"terminated", false}, {"quotients", io::sequence_json(ex.pair.a, 3)}}},
                      {"b", {{"p", 3}, {"terminated", false}, {"quotients", io::sequence_json(ex.pair.b, 3)}}}};
        } else if (name == "check") {
            const Rational alpha = detail::parse_rational(alpha_str, "--alpha");
            const std::size_t n_max = n != 0 ? n : 50;
            const QuotientPair pair = load_pair(n_max, alpha);
            result = io::to_json(check_hypotheses(pair, n_max));
        } else if (name == "pow-approx") {
            const Rational alpha = alpha_str.empty() ? Rational(3) : detail::parse_rational(alpha_str, "--alpha");
            const std::size_t idx = n != 0 ? n : 2;
            const QuotientPair pair = load_pair(idx + 6, alpha);
            result = io::to_json(verify_pow_approximation(pair, idx, prec));
        } else if (name == "witness") {
            const Rational alpha = detail::parse_rational(alpha_str, "--alpha");
            detail::check_prime(p);
            result = io::to_json(contradiction_witness(p, alpha, degree, c6_log, n_cap));
        } else if (name == "product-formula") {
            result = io::to_json(product_formula_check(detail::parse_rational(x_str, "--x")));
        }
    } catch (const usage_error& e) {
        emit_error("usage", e.what(), json::object());
        return exit_usage;
    } catch (const precision_error& e) {
        json extra = json::object();
        if (e.index() >= 0)
            extra["index"] = e.index();
        if (e.required() > 0)
            extra["required_precision"] = e.required();
        emit_error(std::string(to_string(e.kind())), e.what(), extra);
        return exit_failure;
    } catch (const error& e) {
        emit_error(std::string(to_string(e.kind())), e.what(), json::object());
        return exit_failure;
    } catch (const json::exception& e) {
        emit_error("usage", std::string("malformed JSON input: ") + e.what(), json::object());
        return exit_usage;
    }

    const json doc = {{"schema", io::schema_tag}, {"command", name}, {"result", result}};
    std::ostringstream buf;
    if (pretty)
        detail::render(doc, buf, 0);
    else
        buf << doc.dump() << '\n';

    if (out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            emit_error("usage", "cannot write '" + out_path + "'", json::object());
            return exit_usage;
        }
        f << buf.str();
    }
    return exit_ok;
}

} // namespace padiccf::cli

#endif
