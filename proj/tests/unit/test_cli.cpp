#include "commands.hpp"

#include "pairy/real.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "pairy");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    unsigned saved = pairy::default_precision();
    int rc = pairy::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    pairy::set_default_precision(saved);
    return {rc, out.str(), err.str()};
}

}  // namespace

TEST(Cli, MomentsRational) {
    auto r = call({"moments", "--p", "1", "--ensemble", "excursion", "--smax", "10", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mode"], "rational");
    EXPECT_EQ(j["mu"][2], "5/64");
    EXPECT_EQ(j["mu"][0], "-1/2");
    EXPECT_EQ(j["schema_version"], 1);
}

TEST(Cli, HalfPointIsValidationError) {
    auto r = call({"moments", "--p", "0.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("limit-half"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({"moments", "--ensemble", "tree"}).code, 2);
    EXPECT_EQ(call({"nosuch"}).code, 2);
    EXPECT_EQ(call({"--format", "xml", "moments"}).code, 2);
    EXPECT_EQ(call({"--precision", "8", "moments"}).code, 2);
    EXPECT_EQ(call({"alpha", "--cost", "gamma-ratio", "--a", "-1"}).code, 2);
}

TEST(Cli, NumericFailureExitCode) {
    // alpha of the gamma-ratio family has a pole at p = 3/2 for a = 1
    auto r = call({"alpha", "--cost", "gamma-ratio", "--a", "1", "--p", "1.5", "--method", "closed"});
    EXPECT_EQ(r.code, 3) << r.out << r.err;
}

TEST(Cli, CheckFailureExitCode) {
    auto r = call({"bounds", "--p", "0.25", "--smax", "10"});
    EXPECT_EQ(r.code, 4) << r.err;
    EXPECT_EQ(call({"bounds", "--p", "1", "--smax", "20"}).code, 0);
}

TEST(Cli, LimitHalf) {
    auto r = call({"limit-half", "--smax", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    auto v = [&](int s) {
        for (auto& row : j["rows"])
            if (row["s"] == s) return std::stod(row["value"].get<std::string>());
        return 0.0;
    };
    EXPECT_NEAR(v(2), 0.610375, 5e-6);
    EXPECT_NEAR(v(3), 0.266217, 5e-6);
}

TEST(Cli, Deterministic) {
    std::vector<std::string> a = {"sample", "--N", "40", "--n", "3000", "--seed", "9", "--compare-dp"};
    auto r1 = call(a), r2 = call(a), r3 = call({"--threads", "3", "sample", "--N", "40", "--n", "3000", "--seed", "9",
                                               "--compare-dp"});
    ASSERT_EQ(r1.code, 0) << r1.err;
    EXPECT_EQ(r1.out, r2.out);
    EXPECT_EQ(r1.out, r3.out);
    auto f1 = call({"finite-n", "--cost", "power-one", "--p", "2", "--nmax", "12", "--format", "csv"});
    auto f2 = call({"finite-n", "--cost", "power-one", "--p", "2", "--nmax", "12", "--format", "csv"});
    ASSERT_EQ(f1.code, 0) << f1.err;
    EXPECT_EQ(f1.out, f2.out);
}

TEST(Cli, PrecisionOption) {
    auto r = call({"--precision", "80", "moments", "--p", "0.75", "--smax", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["precision"], 80);
}
