#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;

    json result() const { return json::parse(out).at("result"); }
    json error() const { return json::parse(err).at("error"); }
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = padiccf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = std::filesystem::temp_directory_path() /
                (std::string("padiccf_") + info->test_suite_name() + "_" + info->name());
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string file(const std::string& name, const std::string& content = {}) const
    {
        const auto p = path_ / name;
        if (!content.empty())
            std::ofstream(p) << content;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> quotient_strings(const json& quotients)
{
    std::vector<std::string> out;
    for (const auto& q : quotients)
        out.push_back(q.at("num").get<std::string>() + "/" + q.at("den").get<std::string>());
    return out;
}

} // namespace

TEST(Cli, ExpandExample)
{
    const auto r = run({"expand", "--p", "3", "--x", "1/2", "--terms", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc.at("schema"), "padic-cf/1");
    EXPECT_EQ(doc.at("command"), "expand");
    EXPECT_EQ(quotient_strings(doc["result"]["quotients"]),
              (std::vector<std::string>{"2/1", "7/3", "8/3", "8/3", "8/3"}));
    EXPECT_EQ(doc["result"]["terminated"], false);
}

TEST(Cli, ExampleSequences)
{
    const auto r = run({"example", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json res = r.result();
    EXPECT_EQ(res["k"], (json{"1", "7", "25", "79"}));
    EXPECT_EQ(res["a_norm_exponents"], (json{"2", "8", "26", "80"}));
    EXPECT_EQ(res["a"]["quotients"][1]["den"], "9");
    EXPECT_EQ(res["b"]["quotients"][0]["num"], "0");
    EXPECT_EQ(res["b"]["quotients"][2]["m"], "7");

    const auto d = run({"example", "--n", "2", "--indexing", "displayed"});
    EXPECT_EQ(d.result()["k"], (json{"7", "25"}));
    EXPECT_EQ(run({"example", "--n", "2", "--indexing", "sideways"}).code, 2);
}

TEST(Cli, WitnessExample)
{
    const auto r = run({"witness", "--p", "3", "--alpha", "3", "--d", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.result()["n_star"], 2);
}

TEST(Cli, AnalyticCommands)
{
    auto rational = [](const Outcome& o) { return o.result()["rational"].get<std::string>(); };
    EXPECT_EQ(rational(run({"exp", "--p", "3", "--x", "3", "--prec", "4"})), "67/1");
    EXPECT_EQ(rational(run({"sqrt", "--p", "3", "--x", "7", "--prec", "3"})), "13/1");
    EXPECT_EQ(rational(run({"sqrt", "--p", "3", "--x", "4"})), "2/1");
    EXPECT_EQ(rational(run({"pow", "--p", "3", "--a", "4", "--b", "3"})), "64/1");

    const auto l = run({"log", "--p", "3", "--x", "4", "--prec", "5", "--verbose"});
    ASSERT_EQ(l.code, 0) << l.err;
    const json res = l.result();
    EXPECT_EQ(res["value"]["val"], 1);
    EXPECT_EQ(res["value"]["prec"], 5);
    EXPECT_TRUE(res.contains("plan"));
    const auto value = padiccf::Rational::parse(res["rational"].get<std::string>());
    EXPECT_EQ(value.num() % 243, 48);
    EXPECT_FALSE(run({"log", "--p", "3", "--x", "4", "--prec", "5"}).result().contains("plan"));
}

TEST(Cli, EvalAndConvergents)
{
    const auto e = run({"eval", "--p", "3", "--quotients", "2,7/3"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(e.result()["value"], "17/7");

    const auto c = run({"convergents", "--p", "3", "--quotients", "1,1/9"});
    ASSERT_EQ(c.code, 0) << c.err;
    const json last = c.result()["convergents"][1];
    EXPECT_EQ(last["p_n"], "10/9");
    EXPECT_EQ(last["q_n"], "1/9");
    EXPECT_EQ(last["P_n"], "10");
    EXPECT_EQ(last["Q_n"], "1");

    EXPECT_EQ(run({"eval", "--p", "3", "--quotients", "2,2"}).code, 1);
}

TEST(Cli, VerifyLemmas)
{
    const auto r = run({"verify-lemmas", "--p", "3", "--x", "1/2", "--terms", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.result()["all_hold"], true);

    const auto a = run({"verify-lemmas", "--random", "12", "--seed", "9", "--terms", "10"});
    const auto b = run({"verify-lemmas", "--random", "12", "--seed", "9", "--terms", "10"});
    const auto c = run({"verify-lemmas", "--random", "12", "--seed", "10", "--terms", "10"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    EXPECT_EQ(a.result()["all_hold"], true);
    EXPECT_EQ(a.result()["inputs"].size(), 12U);
}

TEST(Cli, CheckAndPowApprox)
{
    const auto c = run({"check", "--alpha", "3"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.result()["overall"], true);
    EXPECT_EQ(c.result()["records"].size(), 49U);

    const auto pa = run({"pow-approx", "--n", "2", "--prec", "128"});
    ASSERT_EQ(pa.code, 0) << pa.err;
    EXPECT_EQ(pa.result()["holds"], true);

    const auto low = run({"pow-approx", "--n", "2", "--prec", "20"});
    EXPECT_EQ(low.code, 1);
    EXPECT_EQ(low.error()["kind"], "precision");
    EXPECT_TRUE(low.error().contains("required_precision"));
}

TEST(Cli, ProductFormula)
{
    const auto r = run({"product-formula", "--x", "-35/4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.result()["product"], "1/1");
    EXPECT_EQ(run({"product-formula", "--x", "0"}).code, 1);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"expand", "--p", "3", "--x", "1/2", "--bogus"}).code, 2);
    EXPECT_EQ(run({"expand", "--p", "4", "--x", "1/2"}).code, 2);
    EXPECT_EQ(run({"expand", "--p", "3", "--x", "one"}).code, 2);
    EXPECT_EQ(run({"expand", "--p", "3"}).code, 2);
    EXPECT_EQ(run({"witness", "--p", "3", "--alpha", "2", "--d", "5"}).code, 1);

    const auto sq = run({"sqrt", "--p", "3", "--x", "2"});
    EXPECT_EQ(sq.code, 1);
    EXPECT_EQ(sq.error()["kind"], "no_root");
    EXPECT_TRUE(sq.out.empty());

    const auto dom = run({"log", "--p", "3", "--x", "2"});
    EXPECT_EQ(dom.code, 1);
    EXPECT_EQ(json::parse(dom.err).at("schema"), "padic-cf/1");
    EXPECT_EQ(dom.error()["kind"], "domain");
}

TEST(Cli, Deterministic)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"expand", "--p", "5", "--x", "-22/7", "--terms", "12"},
             {"example", "--n", "6"},
             {"pow-approx", "--n", "1", "--prec", "80"}}) {
        const auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, GlobalFlagsAnywhere)
{
    const auto before = run({"--pretty", "witness", "--p", "3", "--alpha", "3", "--d", "5"});
    const auto after = run({"witness", "--p", "3", "--alpha", "3", "--d", "5", "--pretty"});
    EXPECT_EQ(before.code, 0);
    EXPECT_EQ(before.out, after.out);
    EXPECT_NE(before.out.find("n_star"), std::string::npos);
    EXPECT_THROW(json::parse(before.out), json::parse_error);
}

TEST(Cli, OutWritesOnlyTheRequestedFile)
{
    TempDir dir;
    const std::string path = dir.file("w.json");
    const auto r = run({"witness", "--p", "3", "--alpha", "3", "--d", "5", "--out", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(json::parse(slurp(path))["result"]["n_star"], 2);
}

TEST(Cli, ExampleOutputFeedsCheck)
{
    TempDir dir;
    const json ex = run({"example", "--n", "12"}).result();
    const std::string a = dir.file("a.json", ex["a"].dump());
    const std::string b = dir.file("b.json", ex["b"].dump());
    const auto c = run({"check", "--alpha", "3", "--n", "12", "--a-file", a, "--b-file", b});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(c.result()["overall"], true);
    EXPECT_EQ(run({"check", "--alpha", "3", "--n", "12", "--a-file", a}).code, 2);

    const auto pa = run({"pow-approx", "--n", "2", "--prec", "128", "--a-file", a, "--b-file", b});
    ASSERT_EQ(pa.code, 0) << pa.err;
    EXPECT_EQ(pa.result()["holds"], true);
}

TEST(Cli, ExpansionJsonRoundTrips)
{
    TempDir dir;
    const json e = run({"expand", "--p", "7", "--x", "355/113", "--terms", "6"}).result();
    const std::string path = dir.file("e.json", e.dump());
    const json c = run({"convergents", "--in", path}).result();
    const json ev = run({"eval", "--in", path}).result();
    EXPECT_EQ(c["p"], 7);
    EXPECT_EQ(c["convergents"].size(), e["quotients"].size());
    if (e["terminated"].get<bool>()) {
        EXPECT_EQ(ev["value"], "355/113");
    }
    EXPECT_EQ(run({"eval", "--in", dir.file("bad.json", "{not json")}).code, 2);
}

TEST(Cli, DigitsFileInput)
{
    TempDir dir;
    const json v = run({"sqrt", "--p", "7", "--x", "2", "--prec", "20"}).result()["value"];
    const std::string path = dir.file("sqrt2.json", v.dump());
    const auto e = run({"expand", "--digits-file", path, "--terms", "40"});
    // Twenty digits run out well before forty quotients.
    EXPECT_EQ(e.code, 1);
    EXPECT_EQ(e.error()["kind"], "precision");
    EXPECT_TRUE(e.error().contains("index"));
    const auto ok = run({"expand", "--digits-file", path, "--terms", "3"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(ok.result()["quotients"].size(), 3U);

    const json l = run({"log", "--p", "3", "--x", "4", "--prec", "10"}).result()["value"];
    const std::string lp = dir.file("l.json", l.dump());
    const auto back = run({"exp", "--digits-file", lp, "--prec", "9"});
    ASSERT_EQ(back.code, 0) << back.err;
    EXPECT_EQ(back.result()["rational"], "4/1");
}

TEST(Cli, PrecisionFromEnvironment)
{
    ::setenv("PADIC_CF_PREC", "7", 1);
    const auto r = run({"sqrt", "--p", "5", "--x", "6"});
    const auto flag = run({"sqrt", "--p", "5", "--x", "6", "--prec", "3"});
    ::unsetenv("PADIC_CF_PREC");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.result()["value"]["prec"], 7);
    EXPECT_EQ(flag.result()["value"]["prec"], 3);
    EXPECT_EQ(run({"sqrt", "--p", "5", "--x", "6"}).result()["value"]["prec"], 64);
}
