#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsesum/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

// A small grid so verify-all finishes in well under a second.
sparsesum::DeskProfile tiny_profile() {
    sparsesum::DeskProfile p;
    p.moment_primes = {7, 11};
    p.moment_pairs = {{3, 2}, {7, 5}};
    p.gcd_r_max = 10;
    p.factor_r_max = 12;
    p.divisibility_r_max = 8;
    p.divisibility_p_max = 60;
    p.weil_instances = 10;
    p.cochrane_pinner_instances = 10;
    p.congruence_instances = 5;
    p.random_p_max = 600;
    p.u_oracle_instances = 2;
    p.oracle_p_max = 60;
    p.semicircle_p = 1009;
    p.semicircle_samples = 2000;
    p.semicircle_ks_max = 0.1;
    p.ratio_primes = {1009};
    p.horizontal_p_max = 500;
    return p;
}

Result run(std::vector<std::string> args, const sparsesum::DeskProfile& profile = {}) {
    args.insert(args.begin(), "expsum");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = sparsesum::cli::run(static_cast<int>(argv.size()), argv.data(), out, err, profile);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST(Cli, ZerosReportsCertificate) {
    const Result r = run({"zeros", "--p", "7", "--r", "7", "--s", "5", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["N"], 2);
    EXPECT_EQ(j["zeros"], json::array({2, 4}));
    EXPECT_EQ(j["excluded_zeros"], json::array({0, 6}));
    EXPECT_EQ(j["R_decimal_string"], "25");
    EXPECT_EQ(j["divisibility_ok"], true);
}

TEST(Cli, DefaultOutputIsJson) {
    const Result a = run({"zeros", "--p", "7", "--r", "7", "--s", "5"});
    const Result b = run({"zeros", "--p", "7", "--r", "7", "--s", "5", "--json"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, AverageUGolden) {
    const Result r = run({"avg-u", "--p", "101", "--a", "1,1", "--H", "5", "--K", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["U"]["re"].get<double>(), 74.147273726910070, 1e-9);
    EXPECT_NEAR(j["U"]["im"].get<double>(), 7.317297142054500, 1e-9);
    EXPECT_EQ(j["U"]["terms"], 2500);
}

TEST(Cli, CsvCarriesSameNumbersAsJson) {
    const std::vector<std::string> base{"avg-u", "--p", "101", "--a", "1,1", "--H", "5", "--K", "1"};
    auto csv_args = base;
    csv_args.push_back("--csv");
    const json j = json::parse(run(base).out);
    const Result c = run(csv_args);
    ASSERT_EQ(c.code, 0);
    std::istringstream in(c.out);
    std::string header;
    std::string values;
    std::getline(in, header);
    std::getline(in, values);
    std::vector<std::string> keys;
    std::vector<std::string> cells;
    std::stringstream hs(header);
    std::stringstream vs(values);
    for (std::string k; std::getline(hs, k, ',');) {
        keys.push_back(k);
    }
    for (std::string v; std::getline(vs, v, ',');) {
        cells.push_back(v);
    }
    ASSERT_EQ(keys.size(), cells.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] == "U.re") {
            EXPECT_EQ(std::stod(cells[i]), j["U"]["re"].get<double>());
        }
        if (keys[i] == "U.im") {
            EXPECT_EQ(std::stod(cells[i]), j["U"]["im"].get<double>());
        }
    }
    EXPECT_NE(header.find("U.re"), std::string::npos) << header;
}

TEST(Cli, RepeatRunsAreByteIdenticalAcrossThreadCounts) {
    const Result a = run({"binomial", "--p", "1009", "--a", "3", "--b", "5", "--e", "7", "--f", "3", "--threads", "1"});
    const Result b = run({"binomial", "--p", "1009", "--a", "3", "--b", "5", "--e", "7", "--f", "3", "--threads", "4"});
    const Result c = run({"binomial", "--p", "1009", "--a", "3", "--b", "5", "--e", "7", "--f", "3", "--threads", "4"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out, c.out);
    const Result h1 = run({"horizontal", "--h", "2,5", "--a", "1,1", "--P-max", "400", "--csv", "--threads", "1"});
    const Result h4 = run({"horizontal", "--h", "2,5", "--a", "1,1", "--P-max", "400", "--csv", "--threads", "3"});
    EXPECT_EQ(h1.out, h4.out);
    EXPECT_EQ(h1.out.substr(0, h1.out.find('\n')), "p,re,im,abs");
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"zeros", "--p", "9", "--r", "7", "--s", "5"}).code, 2);
    EXPECT_EQ(run({"zeros", "--p", "7", "--r", "7"}).code, 2);
    EXPECT_EQ(run({"zeros", "--p", "7", "--r", "7", "--s", "5", "--json", "--csv"}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"avg-u", "--p", "101", "--a", "1,1,1", "--H", "5"}).code, 2);
    const Result r = run({"zeros", "--p", "9", "--r", "7", "--s", "5"});
    EXPECT_NE(r.err.find("usage error"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, HelpExitsZero) {
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verify-all"), std::string::npos);
    EXPECT_EQ(run({"zeros", "--help"}).code, 0);
}

TEST(Cli, OutWritesRowsToFile) {
    const std::string path = ::testing::TempDir() + "expsum_horizontal.csv";
    const Result r = run({"horizontal", "--h", "2,5", "--a", "1,1", "--P-max", "100", "--csv", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "p,re,im,abs");
    std::remove(path.c_str());
}

TEST(Cli, VerifyAllPassesOnSmallGrid) {
    const Result r = run({"verify-all", "--threads", "2"}, tiny_profile());
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
    const Result j = run({"verify-all", "--json"}, tiny_profile());
    EXPECT_EQ(json::parse(j.out)["passed"], true);
}

TEST(Cli, FailedHardSuiteExitsOne) {
    auto profile = tiny_profile();
    // No finite sample has KS distance zero.
    profile.semicircle_ks_max = 0.0;
    const Result r = run({"verify-all"}, profile);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("HARD check failed"), std::string::npos);
    EXPECT_NE(r.err.find("semicircle"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UnknownProfileIsUsageError) {
    EXPECT_EQ(run({"verify-all", "--profile", "huge"}, tiny_profile()).code, 2);
}

TEST(Cli, MomentsCsvListsChecks) {
    const Result r = run({"moments", "--p", "13", "--r", "7", "--s", "5", "--csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "name,kind,relation,observed,bound,ratio,passed,skipped");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 5);
}
