#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "excursion/counting.hpp"
#include "excursion/io/csv.hpp"
#include "excursion/io/keyvalue.hpp"
#include "oracles.hpp"

using namespace excursion;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "excursion");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return (std::filesystem::path(EXCURSION_TEST_TMP) / name).string(); }

std::string write_tmp(const std::string& name, const std::string& contents) {
    const auto path = tmp(name);
    io::write_file(path, contents);
    return path;
}

std::string brownian_csv() {
    const auto x = oracle::brownian_path(100'001, 1e-3, 1.0, 21);
    std::string s = "value\n";
    for (double v : x) s += io::format_double(v) + "\n";
    return write_tmp("brownian.csv", s);
}

}  // namespace

TEST(Cli, AnalyzeBrownianIsDiffusive) {
    const auto r = run_cli({"analyze", brownian_csv()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("DIFFUSIVE: slope -"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("slope-in-band"), std::string::npos);
}

TEST(Cli, AnalyzeJsonIsParseable) {
    const auto r = run_cli({"--json", "analyze", brownian_csv()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("verdict"), "diffusive");
    EXPECT_EQ(j.at("input").at("n"), 100'001);
    EXPECT_TRUE(j.contains("profile"));
}

TEST(Cli, AnalyzeOptionsReturnsLength) {
    std::string s = "time,price\n";
    const auto x = oracle::brownian_path(20'001, 1e-3, 1.0, 4);
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += io::format_double(static_cast<double>(i) * 0.5) + "," + io::format_double(100.0 * std::exp(0.01 * x[i])) + "\n";
    }
    cli::AnalyzeOptions opt;
    opt.path = write_tmp("gbm.csv", s);
    opt.returns = true;
    const auto rep = cli::cmd_analyze(opt);
    EXPECT_EQ(rep.n, 20'000u);
    EXPECT_EQ(rep.dt, 0.5);
    EXPECT_EQ(rep.column, "price");
}

TEST(Cli, ConstantPricesAreIndeterminateBothWays) {
    const auto path = write_tmp("flat.csv", "price\n5\n5\n5\n5\n5\n5\n5\n5\n5\n5\n");
    const auto plain = run_cli({"analyze", path});
    EXPECT_EQ(plain.code, 3);
    EXPECT_NE(plain.out.find("INDETERMINATE"), std::string::npos);
    const auto ret = run_cli({"analyze", path, "--returns"});
    EXPECT_EQ(ret.code, 3);
    EXPECT_NE(ret.out.find("INDETERMINATE"), std::string::npos);
}

TEST(Cli, AnalyzeInputErrors) {
    EXPECT_EQ(run_cli({"analyze", tmp("does-not-exist.csv")}).code, 2);
    const auto bad = write_tmp("bad.csv", "a\n1\nx1\n");
    const auto r = run_cli({"analyze", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
    const auto zero = write_tmp("zero.csv", "p\n1\n2\n0\n3\n4\n5\n6\n7\n8\n9\n");
    const auto z = run_cli({"analyze", zero, "--returns"});
    EXPECT_EQ(z.code, 2);
    EXPECT_NE(z.err.find("line 4"), std::string::npos);
}

TEST(Cli, SimulateLogisticRowCount) {
    const auto out = tmp("logistic.csv");
    const auto r = run_cli({"--seed", "7", "simulate", "--kind", "logistic", "--T", "100", "--dt", "1", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = io::parse_csv(io::read_file(out));
    EXPECT_EQ(t.rows(), 101u);
    EXPECT_EQ(t.header, (std::vector<std::string>{"time", "value"}));
    EXPECT_NE(r.out.find("ground_truth"), std::string::npos);
    EXPECT_NE(r.out.find("kind = logistic"), std::string::npos);
}

TEST(Cli, SimulateBrownianQuadraticVariation) {
    const auto r = run_cli({"simulate", "--kind", "brownian", "--R", "1", "--dt", "0.001", "--T", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = io::parse_csv(r.out);
    ASSERT_EQ(t.rows(), 10'001u);
    EXPECT_NEAR(quadratic_variation(std::span<const double>(t.columns[1])), 10.0, 0.5);
    EXPECT_NE(r.err.find("diffusive"), std::string::npos);
}

TEST(Cli, SimulateRejectsBadInput) {
    const auto cir = run_cli({"simulate", "--kind", "cir", "--R", "0"});
    EXPECT_EQ(cir.code, 2);
    EXPECT_NE(cir.err.find("R must be positive"), std::string::npos);
    const auto kind = run_cli({"simulate", "--kind", "lorenz"});
    EXPECT_EQ(kind.code, 2);
    EXPECT_NE(kind.err.find("shm"), std::string::npos);
    const auto param = run_cli({"simulate", "--kind", "chen", "--param", "q=1"});
    EXPECT_EQ(param.code, 2);
    EXPECT_NE(param.err.find("a, b, c"), std::string::npos);
}

TEST(Cli, SimulateFromConfig) {
    const auto cfg = write_tmp("henon.cfg", "kind = henon\ndt = 1\nT = 50\n");
    const auto r = run_cli({"simulate", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::parse_csv(r.out).rows(), 51u);
}

TEST(Cli, SweepSingleCell) {
    const auto plan = write_tmp("plan.cfg", "kind = ou\ndt_grid = 0.01\nT_grid = 10\nnoise_levels = 1\nreps = 2\n");
    const auto out = tmp("sweep.csv");
    const auto r = run_cli({"sweep", plan, "--out", out, "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("[cell 1/1]"), std::string::npos);
    const auto t = io::parse_csv(io::read_file(out));
    ASSERT_EQ(t.rows(), 1u);
    const double acc = t.columns[t.column_index("accuracy")][0];
    EXPECT_TRUE(acc == 0.0 || acc == 0.5 || acc == 1.0);
}

TEST(Cli, SweepJsonToStdout) {
    const auto plan = write_tmp("plan2.cfg", "kind = logistic\ndt_grid = 1\nT_grid = 200\nnoise_levels = inf\nreps = 2\n");
    const auto r = run_cli({"sweep", plan, "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("cells").size(), 1u);
}

TEST(Cli, SweepMalformedConfigNamesKey) {
    const auto plan = write_tmp("bad_plan.cfg", "kind = ou\ndt_grid = 0.01\nbogus_key = 3\n");
    const auto r = run_cli({"sweep", plan});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bogus_key"), std::string::npos);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"analyze"}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, 0); }
