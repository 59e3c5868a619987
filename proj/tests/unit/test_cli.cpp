#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"

using domcone::json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
    json report() const { return json::parse(out); }
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "domcone");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = domcone::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, HelpExitsZero) {
    const Invocation r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("check-inclusion"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(invoke({"no-such-command"}).code, 1);
    EXPECT_EQ(invoke({"aperture"}).code, 1);
    EXPECT_EQ(invoke({"aperture", "--format", "xml", "--body", "pucci:n=2,lam=1,Lam=3"}).code, 1);
}

TEST(Cli, AperturePucci) {
    const Invocation r = invoke({"aperture", "--body", "pucci:n=2,lam=1,Lam=3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_NEAR(j.at("alpha").get<double>(), 4.0 / 3.0, 1e-14);
    EXPECT_NEAR(j.at("p").get<double>(), 4.0, 1e-12);
    EXPECT_NEAR(j.at("c").get<double>(), 4.0, 1e-14);
    EXPECT_EQ(j.at("violations"), json::array());
    EXPECT_EQ(j.at("command"), "aperture");
    EXPECT_EQ(j.at("schema"), domcone::kReportSchema);
}

TEST(Cli, ApertureWithMinimalBound) {
    const Invocation r = invoke({"aperture", "--body", "dominative:n=3,p=4", "--count", "200", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.report().contains("minimal_bound"));
}

TEST(Cli, EvalInlineJson) {
    const Invocation r = invoke({"eval", "--op", R"({"type":"dominative","n":2,"p":4})", "--X",
                       R"({"n":2,"entries":[[-3,0],[0,1]]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_NEAR(j.at("value").get<double>(), 0.0, 1e-15);
    EXPECT_TRUE(j.at("member").get<bool>());
}

TEST(Cli, EvalExampleMinusInfinity) {
    const Invocation r = invoke({"eval", "--op", "example", "--X", R"({"n":2,"entries":[[-5,0],[0,-2]]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_TRUE(j.at("minus_infinity").get<bool>());
    EXPECT_EQ(j.at("value"), "-inf");
}

TEST(Cli, AcdoMatchesTraceFormula) {
    const Invocation r = invoke({"acdo", "--op", "dominative:n=3,p=2", "--X", R"({"n":3,"entries":[[1,0,0],[0,2,0],[0,0,6]]})"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_NEAR(j.at("value").get<double>(), 3.0, 2e-10);
    EXPECT_EQ(j.at("bracket").size(), 2u);
    EXPECT_GT(j.at("iterations").get<int>(), 0);
}

TEST(Cli, FundsolNewtonian) {
    const Invocation r = invoke({"fundsol", "--n", "3", "--p", "2", "--at", "1,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_NEAR(j.at("value").get<double>(), 1.0, 1e-15);
    EXPECT_NEAR(j.at("gradient")[0].get<double>(), -1.0, 1e-15);
    const auto eigs = j.at("eigs").get<std::vector<double>>();
    EXPECT_NEAR(eigs[0], -1.0, 1e-14);
    EXPECT_NEAR(eigs[2], 2.0, 1e-14);
    EXPECT_EQ(invoke({"fundsol", "--n", "3", "--p", "2", "--at", "0,0,0"}).code, 1);
}

TEST(Cli, SobolevSingleEps) {
    const Invocation r = invoke({"sobolev", "--n", "2", "--p", "2", "--q", "1", "--eps", "1e-8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_NEAR(j.at("value").get<double>(), 2.0 * std::numbers::pi * (1.0 - 1e-8), 1e-12);
    EXPECT_FALSE(j.at("diverges").get<bool>());
    EXPECT_NEAR(j.at("threshold_q").get<double>(), 2.0, 1e-15);
    const json d = invoke({"sobolev", "--n", "2", "--p", "2", "--q", "1.5", "--eps", "1e-6"}).report();
    EXPECT_FALSE(d.at("diverges").get<bool>());
}

TEST(Cli, SobolevSweepCsv) {
    const Invocation r = invoke({"sobolev", "--n", "2", "--p", "2", "--q-sweep", "1:2:0.5", "--eps", "1e-2,1e-4", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, line;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("q,", 0), 0u);
    int rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    EXPECT_EQ(rows, 3);
}

TEST(Cli, CheckInclusionVerdicts) {
    const Invocation ok = invoke({"check-inclusion", "--op", "example", "--p", "2", "--count", "100", "--seed", "7"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(ok.report().at("verdict"), "consistent");
    const Invocation bad = invoke({"check-inclusion", "--op", "example", "--p", "2.5", "--count", "100", "--seed", "7"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.report().at("verdict"), "violated");
    const Invocation csv = invoke({"check-inclusion", "--op", "example", "--p", "2", "--count", "20", "--format", "csv"});
    EXPECT_EQ(csv.out.rfind("radius,worst_fp", 0), 0u);
}

TEST(Cli, ReportWrapsInclusion) {
    const Invocation r = invoke({"report", "--op", "dominative:n=3,p=3", "--p", "3", "--count", "30"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.report();
    EXPECT_TRUE(j.contains("q_interval"));
    EXPECT_TRUE(j.contains("statement"));
    EXPECT_TRUE(j.contains("pairing_estimate"));
}

TEST(Cli, VerifyAnnihilation) {
    const Invocation ok = invoke({"verify", "--op", "pucci:n=2,lam=1,Lam=2", "--p", "3", "--count", "100"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    const Invocation mismatch = invoke({"verify", "--op", "dominative:n=3,p=4", "--p", "3"});
    EXPECT_EQ(mismatch.code, 1);
    EXPECT_EQ(json::parse(mismatch.out).at("error").at("code"), "aperture_mismatch");
    EXPECT_NE(mismatch.err.find("aperture_mismatch"), std::string::npos);
    const Invocation residual = invoke({"verify", "--op", "dominative:n=3,p=4", "--p", "3", "--no-enforce-aperture"});
    EXPECT_EQ(residual.code, 2);
}

TEST(Cli, ExampleCommand) {
    const Invocation r = invoke({"example", "--c", "1.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(r.report().at("worst_residual").get<double>(), 1e-9);
    EXPECT_EQ(invoke({"example", "--c", "0.5"}).code, 1);
}

TEST(Cli, MalformedInputs) {
    const Invocation r = invoke({"eval", "--op", "{\"type\":", "--X", R"({"n":2,"entries":[[1,0],[0,1]]})"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json::parse(r.out).at("error").at("code"), "malformed_input");
    EXPECT_EQ(invoke({"eval", "--op", "dominative:n=3,p=2", "--X", R"({"n":2,"entries":[[1,0],[0,1]]})"}).code, 1);
    EXPECT_EQ(invoke({"eval", "--op", "/no/such/file.json", "--X", R"({"n":2,"entries":[[1,0],[0,1]]})"}).code, 1);
}

TEST(Cli, SuiteSingleGroupAndOutFile) {
    const auto path = std::filesystem::temp_directory_path() / "domcone-suite-test.json";
    const Invocation r = invoke({"suite", "--group", "7", "--seed", "7", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    const json j = json::parse(in);
    ASSERT_EQ(j.at("groups").size(), 1u);
    EXPECT_TRUE(j.at("groups")[0].at("passed").get<bool>());
    std::filesystem::remove(path);
    const Invocation csv = invoke({"suite", "--group", "1", "--format", "csv"});
    EXPECT_EQ(csv.out.rfind("id,name,passed,error", 0), 0u);
}

TEST(Cli, EmitReportIsNewlineTerminated) {
    const std::string s = domcone::cli::emit_report(json{{"violations", json::array()}});
    EXPECT_EQ(s.back(), '\n');
    EXPECT_EQ(json::parse(s).at("violations"), json::array());
}
