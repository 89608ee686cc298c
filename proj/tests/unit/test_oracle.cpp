#include "pairy/costs.hpp"
#include "pairy/errors.hpp"
#include "pairy/numerics.hpp"
#include "pairy/oracle.hpp"
#include "pairy/rng.hpp"
#include "pairy/sampler.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace pairy;

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<int> as_int(const Steps& s) { return std::vector<int>(s.begin(), s.end()); }

}  // namespace

TEST(Paths, ParseAndValidate) {
    auto p = LatticePath::parse("+,+,-,-", Ensemble::excursion);
    EXPECT_EQ(p.str(), "++--");
    EXPECT_EQ(p.semilength(), 2);
    EXPECT_THROW(LatticePath::parse("+-x", Ensemble::bridge), MalformedPath);
    EXPECT_THROW(validate(LatticePath::parse("-+", Ensemble::excursion)), MalformedPath);
    EXPECT_THROW(validate(LatticePath::parse("++-", Ensemble::bridge)), MalformedPath);
    EXPECT_NO_THROW(validate(LatticePath::parse("-+", Ensemble::bridge)));
}

TEST(Paths, Slices) {
    auto sl = [](const char* s, Ensemble e) { return sorted(slice_semilengths(LatticePath::parse(s, e))); };
    EXPECT_EQ(sl("+-", Ensemble::excursion), (std::vector<int>{0}));
    EXPECT_EQ(sl("++--", Ensemble::excursion), (std::vector<int>{0, 1}));
    EXPECT_EQ(sl("+-+-", Ensemble::excursion), (std::vector<int>{0, 0}));
    EXPECT_EQ(sl("-+", Ensemble::bridge), (std::vector<int>{0}));
    // every path up to N = 6 against the level scan
    for (int N = 0; N <= 6; ++N)
        for (auto e : {Ensemble::excursion, Ensemble::bridge})
            for_each_path(N, e, [&](const Steps& st) {
                LatticePath p{st, e};
                EXPECT_EQ(sorted(slice_semilengths(p)), sorted(oracle::slices(as_int(st)))) << p.str();
            });
}

TEST(Paths, Statistic) {
    auto w = CostFunction::gamma_ratio(Rat(1, 2), Rat(1));
    auto one = LatticePath::parse("+-", Ensemble::excursion);
    EXPECT_EQ(statistic_exact(one, w, Rat(0)), Rat(1, 2));
    EXPECT_EQ(statistic_exact(LatticePath::parse("++--", Ensemble::excursion), w, Rat(0)), Rat(2));
    auto c = CostFunction::power_one(Real(0.7));
    EXPECT_EQ(statistic(LatticePath::parse("-+", Ensemble::bridge), c, Real(0)), c.evaluate(0));
    EXPECT_EQ(statistic_exact(one, w, Rat(1, 2)), Rat(0));
}

TEST(Paths, Enumerate) {
    EXPECT_EQ(enumerate_paths(3, Ensemble::excursion).size(), 5u);
    EXPECT_EQ(enumerate_paths(2, Ensemble::bridge).size(), 6u);
    EXPECT_EQ(enumerate_paths(0, Ensemble::excursion).size(), 1u);
    EXPECT_EQ(Rat(enumerate_paths(9, Ensemble::excursion).size()), oracle::catalan(9));
    EXPECT_EQ(mpz_class(enumerate_paths(8, Ensemble::bridge).size()), binomial(16, 8));
    EXPECT_THROW(enumerate_paths(kExcursionEnumCap + 1, Ensemble::excursion), CapExceeded);
    EXPECT_THROW(enumerate_paths(kBridgeEnumCap + 1, Ensemble::bridge), CapExceeded);
}

TEST(Dp, SmallValues) {
    auto w = CostFunction::power_one(Rat(2));
    auto t = exact_moment_dp(Ensemble::excursion, w, Scalar(Rat(1, 3)), 4, 2);
    ASSERT_TRUE(t.exact.has_value());
    const auto& M = *t.exact;
    EXPECT_EQ(M[1][1], Rat(1) - Rat(1, 3));
    // (omega(1) + 3 omega(0))/2 - 2 eps
    EXPECT_EQ(M[1][2], Rat(4 + 3, 2) - Rat(2, 3));
    EXPECT_EQ(M[0][4], Rat(1));
}

TEST(Dp, EqualsBruteForce) {
    for (auto e : {Ensemble::excursion, Ensemble::bridge}) {
        for (auto cf : {CostFunction::power_half(Rat(1)), CostFunction::power_one(Rat(2))}) {
            Rat eps(-1, 2);
            auto dp = exact_moment_dp(e, cf, Scalar(eps), 8, 4);
            auto lib = brute_force_moments(e, cf, eps, 8, 4);
            auto ora = oracle::brute_moments(8, 4, e == Ensemble::excursion,
                                             [&](int m) { return cf.evaluate_exact(m); }, eps);
            for (int s = 0; s <= 4; ++s)
                for (int N = 0; N <= 8; ++N) {
                    EXPECT_EQ((*dp.exact)[s][N], ora[s][N]) << s << ' ' << N;
                    EXPECT_EQ(lib[s][N], ora[s][N]) << s << ' ' << N;
                }
        }
    }
}

TEST(Dp, RealModeMatchesRational) {
    auto cf = CostFunction::power_one(Rat(2));
    auto q = exact_moment_dp(Ensemble::bridge, cf, Scalar(Rat(1, 4)), 20, 3);
    auto r = exact_moment_dp(Ensemble::bridge, cf, Scalar(Real(0.25)), 20, 3);
    for (int s = 0; s <= 3; ++s)
        for (int N = 0; N <= 20; ++N)
            EXPECT_LT(abs(r.at(s, N) - to_real((*q.exact)[s][N])).to_double(), 1e-50 * (1 + r.at(s, N).to_double()));
}

TEST(Dp, RescaledConvergence) {
    auto cf = CostFunction::gamma_ratio(Rat(1, 2), Rat(1));
    auto t = exact_moment_dp(Ensemble::excursion, cf, Scalar(Rat(-1, 2)), 1000, 2);
    auto rows = rescaled_convergence(t, Real(1));
    EXPECT_TRUE(rows[0].deviations.back().is_zero());
    EXPECT_NEAR(rows[1].fitted_exponent, 0.5, 0.1);

    // p = 1/4, eps = 0: M_1(N) = alpha N + t(p) N^(3/4) + o(N^(3/4))
    auto q = CostFunction::gamma_ratio(Real(0.5), Real(0.25));
    auto tab = q.table(4000);
    std::vector<double> w;
    for (auto& v : tab) w.push_back(v.to_double());
    auto M = exact_moment_dp_double(Ensemble::excursion, w, 4000, 1);
    double a = alpha_closed_form(q).value.to_double();
    double tp = canonical_shift(Real(0.25)).to_double();
    double N = 4000;
    EXPECT_LT(std::fabs(M[1][4000] / N - a), 0.2);
    EXPECT_LT(std::fabs((M[1][4000] - a * N) / std::pow(N, 0.75) - tp), 0.1);
}

TEST(Hooks, SmallPaths) {
    EXPECT_EQ(path_to_tree_hooks(LatticePath::parse("+-", Ensemble::excursion)), (std::vector<int>{1}));
    EXPECT_EQ(sorted(path_to_tree_hooks(LatticePath::parse("++--", Ensemble::excursion))), (std::vector<int>{1, 2}));
    EXPECT_THROW(path_to_tree_hooks(LatticePath::parse("-+", Ensemble::bridge)), MalformedPath);
}

TEST(Hooks, SumIsArea) {
    Xoshiro256ss rng(2024);
    auto w = CostFunction::gamma_ratio(Rat(1, 2), Rat(1));
    for (int i = 0; i < 100; ++i) {
        auto p = sample_excursion(50, rng);
        long area2 = 0, h = 0;
        for (auto x : p.steps) {
            area2 += 2 * h + x;  // twice the midpoint height
            h += x;
        }
        long hooks = 0;
        for (int k : path_to_tree_hooks(p)) hooks += 2 * k - 1;
        EXPECT_EQ(2 * hooks, area2);
        EXPECT_EQ(Rat(hooks), statistic_exact(p, w, Rat(0)) * 2);
    }
}

TEST(Dp, CsvHeader) {
    auto cf = CostFunction::power_half(Rat(1));
    auto t = exact_moment_dp(Ensemble::excursion, cf, Scalar(Rat(-1, 2)), 3, 2);
    std::ostringstream os;
    write_table_csv(os, t, Real(1));
    std::string first = os.str().substr(0, os.str().find('\n'));
    EXPECT_NE(first.find("N"), std::string::npos);
    EXPECT_NE(first.find("s"), std::string::npos);
}
