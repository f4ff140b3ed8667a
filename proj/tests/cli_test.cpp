#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "matgeom/io.hpp"

using namespace matgeom;

namespace {

struct Result {
    int code;
    Json report;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    Json rep;
    try {
        rep = Json::parse(out.str());
    } catch (const Json::parse_error&) {
    }
    return {code, rep, err.str()};
}

std::string tmp(const std::string& name) {
    const char* dir = std::getenv("MATGEOM_TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/" + name;
}

Json without_timing(Json rep) {
    rep.erase("timing_ms");
    return rep;
}

}  // namespace

TEST(Cli, CountTwoByTwo) {
    const auto r = run({"count", "--field", "3", "--rows", "2", "--cols", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["counts"], Json({1, 32, 48}));
    EXPECT_EQ(r.report["enumerated"], Json({1, 32, 48}));
    EXPECT_EQ(r.report["total"], 81);
    EXPECT_EQ(r.report["outcome"], "pass");
    EXPECT_EQ(std::prev(r.report.end()).key(), "timing_ms");
}

TEST(Cli, CountGF4SumsToSpaceSize) {
    const auto r = run({"count", "-q", "4", "-m", "2", "-n", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["total"], 256);
    // Counting has no field-size hypothesis.
    EXPECT_EQ(run({"count", "-q", "2", "-m", "2", "-n", "2"}).report["total"], 16);
}

TEST(Cli, VerifyProp22) {
    const auto r = run({"verify-prop22", "--field", "3", "--rows", "2", "--cols", "2"});
    ASSERT_EQ(r.code, 0) << r.report.dump(2);
    EXPECT_EQ(r.report["outcome"], "pass");
    EXPECT_TRUE(r.report.contains("forward"));
    EXPECT_TRUE(r.report.contains("converse"));
    EXPECT_TRUE(r.report.contains("equivalence"));
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"verify-prop22", "--field", "2", "--rows", "2", "--cols", "2"}).code, 2);
    EXPECT_EQ(run({"verify-prop22", "--field", "6"}).code, 2);
    EXPECT_EQ(run({"count", "--field", "3", "--rows", "2", "--bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"certify", tmp("does-not-exist.table")}).code, 2);
    EXPECT_EQ(run({"verify-prop22", "--mode", "sometimes"}).code, 2);
    const auto r = run({"generate", "--field", "2", "--out", tmp("gf2.table")});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.report["outcome"], "error");
}

TEST(Cli, GenerateThenDecomposeRoundTrip) {
    const std::string table = tmp("gen_gf4.table"), truth = tmp("gen_gf4.truth.json"), out = tmp("gen_gf4.dec.json");
    const auto g = run({"generate", "-q", "4", "-m", "2", "-n", "2", "--seed", "11", "--out", table, "--truth", truth});
    ASSERT_EQ(g.code, 0);
    const auto d = run({"decompose", table, "--out", out});
    ASSERT_EQ(d.code, 0) << d.report.dump(2);
    EXPECT_EQ(d.report["decomposition"], g.report["ground_truth"]);
    std::ifstream ts(truth), os(out);
    EXPECT_EQ(Json::parse(ts), Json::parse(os));

    const auto c = run({"certify", table});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.report["certificate"]["pairs_checked"], 256 * 255);
}

TEST(Cli, CorruptedTableFailsWithCounterexample) {
    const std::string table = tmp("corrupt.table");
    ASSERT_EQ(run({"generate", "--seed", "5", "--out", table}).code, 0);
    auto phi = read_table_file(table);
    auto image = phi.image();
    std::swap(image[0], image[80]);
    write_table_file(table, MapTable(phi.spec(), image));

    for (const char* cmd : {"certify", "decompose"}) {
        const auto r = run({cmd, table});
        ASSERT_EQ(r.code, 1) << cmd;
        EXPECT_EQ(r.report["outcome"], "fail");
        const auto& cex = r.report["certificate"]["counterexample"];
        EXPECT_NE(cex["A_dis_B"], cex["phiA_dis_phiB"]);
    }
    const auto s = run({"certify", table, "--mode", "sampled", "--samples", "20000", "--seed", "3"});
    EXPECT_EQ(s.code, 1);
}

TEST(Cli, MalformedTableIsUsageError) {
    const std::string table = tmp("malformed.table");
    std::ofstream(table) << "3 2 2\n0\n1\n";
    EXPECT_EQ(run({"certify", table}).code, 2);
}

TEST(Cli, ReportsAreDeterministicApartFromTiming) {
    const std::vector<std::string> args = {"verify-prop22", "-q", "3", "-m", "2", "-n", "2"};
    EXPECT_EQ(without_timing(run(args).report), without_timing(run(args).report));
    const std::vector<std::string> gen = {"generate", "-q", "5", "--seed", "99", "--out", tmp("det.table")};
    EXPECT_EQ(without_timing(run(gen).report), without_timing(run(gen).report));
}

TEST(Cli, GrassmannReport) {
    const auto r = run({"grassmann", "-q", "3", "-m", "2", "-n", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.report["counts"]["total"], 130);
    EXPECT_EQ(r.report["counts"]["finite"], 81);
    EXPECT_EQ(r.report["counts"]["at_infinity"], 49);
    EXPECT_EQ(r.report["correspondence"]["adjacency_mismatches"], 0);
    EXPECT_EQ(r.report["correspondence"]["complementarity_mismatches"], 0);

    const auto rect = run({"grassmann", "-q", "3", "-m", "2", "-n", "1"});
    ASSERT_EQ(rect.code, 0);
    EXPECT_TRUE(rect.report["correspondence"]["complementarity"].is_string());
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }
