#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "openbook_cli/app.hpp"
#include "openbook_cli/corpus.hpp"
#include "openbook_cli/report.hpp"

using namespace openbook;
using namespace openbook::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "openbook");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
    args.push_back("--normalize");
    const Result r = call(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

}  // namespace

TEST(Corpus, EntriesAreValidAndUnique) {
    const auto corpus = builtin_corpus();
    ASSERT_EQ(corpus.size(), 7u);
    std::set<std::string> names;
    for (const auto& e : corpus) {
        EXPECT_TRUE(names.insert(e.name).second);
        EXPECT_GT(e.germ.m(), e.germ.p());
        EXPECT_EQ(find_builtin(e.name)->germ.components(), e.germ.components());
    }
    EXPECT_FALSE(find_builtin("milnor-m2-p2"));
}

TEST(Cli, AnalyzeAcampoCertificate) {
    const json r = call_json({"analyze", "acampo"});
    EXPECT_EQ(r["verdict"], "HOLDS");
    EXPECT_EQ(r["certificate"], "theorem-4.1");
    EXPECT_EQ(r["weights"]["weights"], json::array({1, 1, 1, 1}));
    EXPECT_FALSE(r.contains("generated_at"));
}

TEST(Cli, SubmersionMilnorFailsWithWitnesses) {
    const json r = call_json({"submersion", "milnor-ex-1", "--samples", "512"});
    EXPECT_EQ(r["verdict"], "FAILS");
    EXPECT_FALSE(r["witnesses"].empty());
    EXPECT_EQ(r["margin_trace"].size(), 5u);
}

TEST(Cli, LinkLinearTwoPoles) {
    const json r = call_json({"link", "linear", "--epsilon", "1"});
    const auto& pts = r["link"]["points"];
    ASSERT_EQ(pts.size(), 2u);
    for (const auto& p : pts) {
        EXPECT_NEAR(p[0].get<double>(), 0.0, 1e-12);
        EXPECT_NEAR(p[1].get<double>(), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(p[2].get<double>()), 1.0, 1e-12);
    }
}

TEST(Cli, ExamplesPassAndAreDeterministic) {
    const Result a = call({"examples", "--normalize", "--samples", "1024"});
    const Result b = call({"examples", "--normalize", "--samples", "1024"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(json::parse(a.out)["examples"]["passed"].get<bool>());
}

TEST(Cli, RaisedHoldThresholdFlipsSeade) {
    const Result r = call({"examples", "--only", "seade-ex-2", "--hold-thr", "0.5", "--normalize"});
    EXPECT_EQ(r.code, kMismatch);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["examples"]["entries"][0]["observed"], "INCONCLUSIVE");
    EXPECT_NE(r.err.find("seade-ex-2"), std::string::npos);
}

TEST(Cli, EmptyCorpusPassesVacuously) {
    const Result r = call({"examples", "--empty", "--normalize"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["examples"]["entries"].empty());
}

TEST(Cli, TimestampUnlessNormalized) {
    const Result r = call({"weights", "acampo"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out).contains("generated_at"));
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(call({"analyze", "no-such-germ"}).code, kInputError);
    EXPECT_EQ(call({"submersion", "seade-ex-2", "--radii", "0.1,0.5"}).code, kInputError);
    EXPECT_EQ(call({"submersion", "seade-ex-2", "--radii", "0.1,abc"}).code, kInputError);
    EXPECT_EQ(call({"submersion", "seade-ex-2", "--format", "xml"}).code, kInputError);
    EXPECT_EQ(call({"pages", "seade-ex-2", "--direction", "1,0,0"}).code, kInputError);
    EXPECT_EQ(call({"pages", "milnor-ex-1", "--sweep", "--samples", "256"}).code, kInputError);
    EXPECT_EQ(call({"frobnicate"}).code, kInputError);
    EXPECT_EQ(call({"link", "linear", "--epsilon", "-1"}).code, kInputError);
}

TEST(Cli, MalformedGermFileReportsLine) {
    const std::string path = ::testing::TempDir() + "bad.germ";
    std::ofstream(path) << "vars: x y z\nP1 = x +* y\nP2 = y\n";
    const Result r = call({"analyze", path});
    EXPECT_EQ(r.code, kInputError);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, NumericFailureExitsThree) {
    // The zero germ puts every sample inside the tube around V.
    const std::string path = ::testing::TempDir() + "zero.germ";
    std::ofstream(path) << "vars: x y z\nP1 = 0\nP2 = x - x\n";
    const Result r = call({"submersion", path, "--samples", "64"});
    EXPECT_EQ(r.code, kNumericError) << r.err;
}

TEST(Cli, CsvFormats) {
    const Result pages = call({"pages", "linear", "--epsilon", "1", "--format", "csv"});
    ASSERT_EQ(pages.code, 0) << pages.err;
    EXPECT_EQ(pages.out.substr(0, pages.out.find('\n')), "angle_index,angle,x1,x2,x3,residual");
    const Result sub = call({"submersion", "seade-ex-2", "--samples", "64", "--format", "csv"});
    ASSERT_EQ(sub.code, 0);
    EXPECT_EQ(sub.out.substr(0, sub.out.find('\n')), "radius_index,sample_index,epsilon,margin,x1,x2,x3");
    EXPECT_EQ(std::count(sub.out.begin(), sub.out.end(), '\n'), 1 + 64 * 5);
    const Result w = call({"weights", "brieskorn-2-3", "--format", "csv"});
    EXPECT_EQ(w.out, "variable,weight\nx1,3\ny1,3\nx2,2\ny2,2\nalpha,6\n");
}

TEST(Cli, WritesOutputFile) {
    const std::string path = ::testing::TempDir() + "report.json";
    const Result r = call({"weights", "acampo", "--out", path, "--normalize"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_EQ(json::parse(in)["certificate"], "theorem-4.1");
}
