#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padiccf/independence.hpp"

using namespace padiccf;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

QuotientPair constant_pair(std::size_t len)
{
    QuotientPair pair{3, {{1, 0}}, {{0, 0}}, Rational(3)};
    for (std::size_t n = 1; n <= len; ++n) {
        pair.a.push_back({1, 1});
        pair.b.push_back({1, 1});
    }
    return pair;
}

} // namespace

TEST(Example, KSequence)
{
    const auto ex = gen_example(6);
    EXPECT_EQ(ex.k, (std::vector<BigInt>{1, 7, 25, 79, 241, 727}));
    for (std::size_t i = 1; i < ex.k.size(); ++i)
        EXPECT_EQ(ex.k[i] - 3 * ex.k[i - 1], 4);
    ASSERT_EQ(ex.pair.a.size(), 7U);
    EXPECT_EQ(ex.pair.a[0], (SymbolicQuotient{1, 0}));
    EXPECT_EQ(ex.pair.b[0], (SymbolicQuotient{0, 0}));
    for (std::size_t n = 1; n <= 6; ++n) {
        EXPECT_EQ(ex.pair.a[n].m, ex.k[n - 1] + 1);
        EXPECT_EQ(ex.pair.b[n].m, ex.k[n - 1]);
        EXPECT_GE(ex.pair.a[n].m, ex.pair.b[n].m);
    }
    EXPECT_THROW(gen_example(0), domain_error);
}

TEST(Example, DisplayedIndexingStartsAtSeven)
{
    const auto ex = gen_example(3, example_indexing::displayed);
    EXPECT_EQ(ex.k, (std::vector<BigInt>{7, 25, 79}));
    EXPECT_EQ(ex.pair.b[1].m, 7);
    EXPECT_EQ(ex.pair.a[1].m, 8);
    EXPECT_TRUE(check_hypotheses(gen_example(40, example_indexing::displayed).pair, 40).overall);
}

TEST(Example, MaterializesSmallQuotients)
{
    const auto ex = gen_example(3);
    EXPECT_EQ(materialize(ex.pair.a[1], 3, 1).value, R("1/9"));
    EXPECT_EQ(materialize(ex.pair.b[2], 3, 2).value, prime_power(3, -7));
    EXPECT_EQ(SymbolicQuotient::from(materialize(ex.pair.a[3], 3, 3), 3), ex.pair.a[3]);
    const auto big = gen_example(20);
    EXPECT_THROW(materialize(big.pair.a[20], 3, 20), length_error);
}

TEST(Hypotheses, ExamplePassesThroughTen)
{
    const auto cert = check_hypotheses(gen_example(10).pair, 10);
    EXPECT_TRUE(cert.overall);
    ASSERT_EQ(cert.records.size(), 9U);
    EXPECT_EQ(cert.records.front().n, 2U);
    // n = 2: m_b = 7 > 3 * m_a(1) = 6
    EXPECT_EQ(cert.records.front().m_b, 7);
    EXPECT_EQ(cert.records.front().required, Rational(6));
}

TEST(Hypotheses, ExamplePassesForEveryLengthUpTo200)
{
    const auto ex = gen_example(200);
    for (std::size_t n = 1; n <= 200; n += 1)
        ASSERT_TRUE(check_hypotheses(ex.pair, n).overall) << n;
}

TEST(Hypotheses, FiftyTermsIsFast)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto cert = check_hypotheses(gen_example(50).pair, 50);
    const auto dt = std::chrono::steady_clock::now() - t0;
    EXPECT_TRUE(cert.overall);
    EXPECT_LT(std::chrono::duration<double>(dt).count(), 1.0);
}

TEST(Hypotheses, ConstantSequencesFailAtTwo)
{
    const auto cert = check_hypotheses(constant_pair(5), 5);
    EXPECT_FALSE(cert.overall);
    EXPECT_TRUE(cert.records[0].a_dominates_b);
    EXPECT_FALSE(cert.records[0].b_exceeds_power);
}

TEST(Hypotheses, Errors)
{
    auto pair = gen_example(5).pair;
    pair.alpha = Rational(2);
    EXPECT_THROW(check_hypotheses(pair, 5), domain_error);
    pair.alpha = R("5/2");
    EXPECT_THROW(check_hypotheses(pair, 6), length_error);
    auto bad = gen_example(3).pair;
    bad.a[0] = {2, 0};
    EXPECT_THROW(check_hypotheses(bad, 3), domain_error);
    bad = gen_example(3).pair;
    bad.b[2] = {3, 7};
    EXPECT_THROW(check_hypotheses(bad, 3), domain_error);
}

TEST(Hypotheses, TruncationIsMonotone)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> step(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        QuotientPair pair{5, {{1, 0}}, {{0, 0}}, R("5/2")};
        BigInt m = 1;
        for (int n = 1; n <= 12; ++n) {
            // Mostly valid growth with occasional violations.
            const BigInt mb = m * 5 / 2 + step(rng) - 1;
            pair.b.push_back({1, std::max<BigInt>(mb, 1)});
            pair.a.push_back({2, std::max<BigInt>(mb, 1) + step(rng)});
            m = pair.a.back().m;
        }
        const auto full = check_hypotheses(pair, 12);
        for (std::size_t n = 2; n < 12; ++n) {
            const auto part = check_hypotheses(pair, n);
            for (std::size_t i = 0; i < part.records.size(); ++i) {
                EXPECT_EQ(part.records[i].a_dominates_b, full.records[i].a_dominates_b);
                EXPECT_EQ(part.records[i].b_exceeds_power, full.records[i].b_exceeds_power);
            }
            if (full.overall) {
                EXPECT_TRUE(part.overall);
            }
        }
    }
}

TEST(PowApproximation, ExampleAtTwo)
{
    const auto rep = verify_pow_approximation(gen_example(6).pair, 2, 128);
    EXPECT_TRUE(rep.holds);
    // 2(k_1 + k_2) + k_3 = 2 * 8 + 25
    EXPECT_EQ(rep.q_norm_exponent, 41);
    EXPECT_EQ(rep.q_norm_exponent_direct, 41);
    EXPECT_GE(rep.lhs_valuation, rep.rhs_valuation);
    EXPECT_FALSE(rep.a_exact);
}

TEST(PowApproximation, RhsExponentMatchesClosedForm)
{
    const auto ex = gen_example(6);
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto rep = verify_pow_approximation(ex.pair, n, 200);
        BigInt expected = 0;
        for (std::size_t j = 1; j <= n; ++j)
            expected += 2 * ex.pair.b[j].m;
        expected += ex.pair.b[n + 1].m;
        EXPECT_EQ(rep.q_norm_exponent, expected);
        EXPECT_EQ(BigInt(rep.q_norm_exponent_direct), expected);
        EXPECT_EQ(rep.rhs_valuation, rep.c3_valuation + static_cast<long>(expected));
        EXPECT_TRUE(rep.holds);
    }
}

TEST(PowApproximation, FiniteBaseExpansion)
{
    QuotientPair pair{3, {{1, 0}, {1, 2}}, {{0, 0}, {1, 1}, {1, 4}, {2, 13}}, Rational(3)};
    const auto rep = verify_pow_approximation(pair, 1, 80);
    EXPECT_TRUE(rep.a_exact);
    EXPECT_EQ(rep.depth_a, 1U);
    EXPECT_EQ(rep.q_norm_exponent, 2 * 1 + 4);
    EXPECT_TRUE(rep.holds);
}

TEST(PowApproximation, Errors)
{
    auto pair = gen_example(3).pair;
    EXPECT_THROW(verify_pow_approximation(pair, 3, 64), length_error);
    EXPECT_THROW(verify_pow_approximation(pair, 0, 64), domain_error);
    EXPECT_THROW(verify_pow_approximation(constant_pair(4), 1, 64), domain_error);
    // Too few digits to tell A^B from A_2^B_2.
    try {
        verify_pow_approximation(gen_example(6).pair, 2, 20);
        FAIL() << "expected precision_error";
    } catch (const precision_error& e) {
        EXPECT_GT(e.required(), 20);
    }
}

TEST(Perturbation, Examples)
{
    const Polynomial3 sum = {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}};
    const Triple x{R("2"), R("5"), R("7")};
    const auto same = polynomial_perturbation_check(sum, x, x, 3);
    EXPECT_TRUE(same.holds);
    EXPECT_EQ(same.lhs_valuation, infinite_valuation);
    EXPECT_EQ(same.rhs_valuation, infinite_valuation);

    const Polynomial3 prod = {{1, 1, 1, 1}};
    const auto rep = polynomial_perturbation_check(prod, {R("1"), R("1"), R("1")}, {R("4"), R("1"), R("1")}, 3);
    EXPECT_EQ(rep.lhs_valuation, 1);
    EXPECT_EQ(rep.rhs_valuation, 1);
    EXPECT_TRUE(rep.holds);

    EXPECT_THROW(polynomial_perturbation_check(sum, {R("1/3"), R("1"), R("1")}, x, 3), domain_error);
}

TEST(Perturbation, RandomPolynomialsSatisfyTheBound)
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> coeff(-20, 20), expo(0, 3), terms(1, 6), pick(0, 2);
    std::uniform_int_distribution<long long> num(-500, 500), den(1, 50);
    const std::array<std::uint64_t, 3> primes{3, 5, 7};
    auto integral = [&](std::uint64_t p) {
        for (;;) {
            const Rational r{BigInt(num(rng)), BigInt(den(rng))};
            if (r.den() % p != 0)
                return r;
        }
    };
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t p = primes[static_cast<std::size_t>(pick(rng))];
        Polynomial3 q;
        const int t = terms(rng);
        for (int j = 0; j < t; ++j) {
            unsigned kx, ky, kz;
            do {
                kx = static_cast<unsigned>(expo(rng));
                ky = static_cast<unsigned>(expo(rng));
                kz = static_cast<unsigned>(expo(rng));
            } while (kx + ky + kz > 3);
            q.push_back({coeff(rng), kx, ky, kz});
        }
        const Triple x{integral(p), integral(p), integral(p)};
        // Perturb by multiples of p^e so the points stay integral.
        const Rational shift = Rational(static_cast<long long>(pick(rng) + 1)) * prime_power(p, expo(rng));
        Triple xp = x;
        (pick(rng) == 0 ? xp.x : pick(rng) == 0 ? xp.y : xp.z) += shift * integral(p);
        EXPECT_TRUE(polynomial_perturbation_check(q, x, xp, p).holds);
    }
}

TEST(Perturbation, TightForSingleVariableMonomial)
{
    const Polynomial3 x_only = {{1, 1, 0, 0}};
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> n(-1000, 1000);
    for (int i = 0; i < 50; ++i) {
        const Rational a(n(rng)), b(n(rng));
        if (a == b)
            continue;
        const auto rep = polynomial_perturbation_check(x_only, {a, R("2"), R("3")}, {b, R("2"), R("3")}, 5);
        EXPECT_EQ(rep.lhs_valuation, rep.rhs_valuation);
    }
}

TEST(Witness, Examples)
{
    ASSERT_EQ(oracle::witness_exponent(3, 1), 5);
    ASSERT_EQ(oracle::witness_exponent(3, 2), 17);
    ASSERT_EQ(oracle::witness_exact(3, 3, 5, 10), 2U);
    ASSERT_EQ(oracle::witness_exact(3, 3, 1, 10), 1U);

    const auto w = contradiction_witness(3, Rational(3), 5, 0.0, 1000);
    EXPECT_EQ(w.n_star, 2U);
    EXPECT_EQ(w.exponent, Rational(17));
    EXPECT_EQ(contradiction_witness(3, Rational(3), 1, 0.0, 1000).n_star, 1U);
}

TEST(Witness, ClosedFormForAlphaThree)
{
    for (long long n = 0; n < 30; ++n)
        EXPECT_EQ(witness_exponent(Rational(3), static_cast<std::size_t>(n)),
                  Rational(2) * pow(Rational(3), n) - Rational(1));
}

TEST(Witness, MatchesExactPowersForIntegerAlpha)
{
    for (const std::uint64_t p : {3ULL, 5ULL, 7ULL})
        for (const long alpha : {3L, 4L, 5L})
            for (unsigned d = 1; d <= 12; ++d)
                EXPECT_EQ(contradiction_witness(p, Rational(alpha), d, 0.0, 100).n_star,
                          oracle::witness_exact(p, alpha, d, 100))
                    << p << " " << alpha << " " << d;
}

TEST(Witness, MonotoneInAlphaAndDegree)
{
    const std::array<Rational, 3> alphas{R("5/2"), R("3"), R("4")};
    for (const std::uint64_t p : {3ULL, 5ULL, 11ULL})
        for (unsigned d = 1; d <= 10; ++d)
            for (std::size_t i = 0; i < alphas.size(); ++i) {
                const auto n = contradiction_witness(p, alphas[i], d, 0.0, 1000).n_star;
                if (i + 1 < alphas.size()) {
                    EXPECT_GE(n, contradiction_witness(p, alphas[i + 1], d, 0.0, 1000).n_star);
                }
                if (d < 10) {
                    EXPECT_LE(n, contradiction_witness(p, alphas[i], d + 1, 0.0, 1000).n_star);
                }
            }
}

TEST(Witness, SlackConstantDelaysTheWitness)
{
    const auto base = contradiction_witness(3, Rational(3), 5, 0.0, 1000).n_star;
    const auto slack = contradiction_witness(3, Rational(3), 5, 1000.0, 1000);
    EXPECT_GE(slack.n_star, base);
    // E(n) ln 3 > 1000 + 5 n ln 4 first at n = 6 (E(5) = 485, E(6) = 1457).
    EXPECT_EQ(slack.n_star, 6U);
}

TEST(Witness, Errors)
{
    EXPECT_THROW(contradiction_witness(3, Rational(2), 5, 0.0, 10), domain_error);
    EXPECT_THROW(contradiction_witness(3, Rational(3), 0, 0.0, 10), domain_error);
    EXPECT_THROW(contradiction_witness(3, Rational(3), 5, -1.0, 10), domain_error);
    EXPECT_THROW(contradiction_witness(4, Rational(3), 5, 0.0, 10), domain_error);
    EXPECT_THROW(contradiction_witness(3, Rational(3), 1000, 0.0, 1), not_found_error);
}
