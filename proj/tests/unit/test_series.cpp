#include "pairy/costs.hpp"
#include "pairy/errors.hpp"
#include "pairy/numerics.hpp"
#include "pairy/series.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pairy;

namespace {

TruncSeries rat_series(std::vector<Rat> c) { return TruncSeries(std::move(c)); }

TruncSeries random_sparse(std::mt19937& gen, int order) {
    std::uniform_int_distribution<int> coin(0, 2), num(-9, 9), den(1, 7);
    std::vector<Rat> c(static_cast<size_t>(order) + 1, Rat(0));
    for (auto& v : c)
        if (coin(gen) == 0) {
            v = Rat(num(gen), den(gen));
            v.canonicalize();
        }
    return rat_series(c);
}

}  // namespace

TEST(Series, ProductOfOnePlusAndMinus) {
    auto f = rat_series({Rat(1), Rat(1), Rat(0)});
    auto g = rat_series({Rat(1), Rat(-1), Rat(0)});
    auto h = mul(f, g);
    ASSERT_EQ(h.order(), 2);
    EXPECT_EQ(h.rat()[0], Rat(1));
    EXPECT_EQ(h.rat()[1], Rat(0));
    EXPECT_EQ(h.rat()[2], Rat(-1));
}

TEST(Series, MulMatchesNaiveConvolution) {
    std::mt19937 gen(7);
    const int M = 16;
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_sparse(gen, M), g = random_sparse(gen, M);
        auto h = mul(f, g);
        for (int n = 0; n <= M; ++n) {
            Rat want(0);
            for (int i = 0; i <= n; ++i) want += f.rat()[i] * g.rat()[n - i];
            want.canonicalize();
            EXPECT_EQ(h.rat()[n], want);
        }
        auto id = mul(f, TruncSeries::one(ScalarKind::rational, M));
        EXPECT_EQ(id.rat(), f.rat());
    }
}

TEST(Series, AddSubScale) {
    auto f = rat_series({Rat(1), Rat(2), Rat(3)});
    auto g = rat_series({Rat(1, 2), Rat(0), Rat(-1)});
    EXPECT_EQ(sub(add(f, g), g).rat(), f.rat());
    auto s = scale(f, Scalar(Rat(1, 3)));
    EXPECT_EQ(s.rat()[2], Rat(1));
}

TEST(Series, HadamardIdentities) {
    std::mt19937 gen(11);
    const int M = 12;
    auto f = random_sparse(gen, M), g = random_sparse(gen, M);
    EXPECT_EQ(hadamard(f, geometric_series(ScalarKind::rational, M)).rat(), f.rat());
    auto z = hadamard(f, TruncSeries::zero(ScalarKind::rational, M));
    for (auto& v : z.rat()) EXPECT_EQ(v, Rat(0));
    auto h = hadamard(f, g);
    for (int n = 0; n <= M; ++n) EXPECT_EQ(h.rat()[n], f.rat()[n] * g.rat()[n]);
}

TEST(Series, MismatchesThrow) {
    auto f = TruncSeries::one(ScalarKind::rational, 4);
    auto g = TruncSeries::one(ScalarKind::real, 4);
    auto h = TruncSeries::one(ScalarKind::rational, 5);
    EXPECT_THROW(mul(f, g), KindMismatch);
    EXPECT_THROW(add(f, h), OrderMismatch);
}

TEST(Series, BinomialSeries) {
    auto s = sqrt_one_minus_z(6);
    std::vector<Rat> want = {Rat(1), Rat(-1, 2), Rat(-1, 8), Rat(-1, 16), Rat(-5, 128), Rat(-7, 256), Rat(-21, 1024)};
    EXPECT_EQ(s.rat(), want);
    auto prod = mul(s, inv_sqrt_one_minus_z(6));
    EXPECT_EQ(prod.rat(), TruncSeries::one(ScalarKind::rational, 6).rat());
    auto ones = binomial_series(Rat(1), 10);
    for (auto& v : ones.rat()) EXPECT_EQ(v, Rat(1));
    // real alpha: (1-z)^(-3/2) squared = (1-z)^(-3)
    auto b = binomial_series(Real(1.5), 8);
    auto b3 = binomial_series(Rat(3), 8);
    auto sq = mul(b, b);
    for (int n = 0; n <= 8; ++n) EXPECT_LT(abs(sq.real()[n] - to_real(b3.rat()[n])).to_double(), 1e-60);
}

TEST(Series, ExcursionSeriesHasNormalizedCatalanCoefficients) {
    // (1 - sqrt(1-z))/z = 1/2 + z/8 + z^2/16 + ...
    auto e = excursion_e0(20);
    for (int n = 0; n <= 20; ++n) EXPECT_EQ(e.rat()[n], normalized_catalan(n)) << n;
}

TEST(Series, ApplyL) {
    auto w = CostFunction::gamma_ratio(Rat(1, 2), Rat(1));
    auto e = excursion_e0(12);
    auto l = apply_L(w, Scalar(Rat(0)), 1, e);
    for (int n = 0; n <= 12; ++n) EXPECT_EQ(l.rat()[n], normalized_catalan(n) * Rat(2 * n + 1, 2));

    auto one = TruncSeries::one(ScalarKind::rational, 4);
    EXPECT_EQ(apply_L(w, Scalar(w.evaluate_exact(0)), 1, one).rat()[0], Rat(0));

    Scalar eps(Rat(1, 3));
    auto twice = apply_L(w, eps, 1, apply_L(w, eps, 1, e));
    EXPECT_EQ(apply_L(w, eps, 2, e).rat(), twice.rat());
}

TEST(Series, ApplyLReal) {
    auto w = CostFunction::power_one(Real(0.3));
    auto e = excursion_e0(10);
    std::vector<Real> er;
    for (auto& v : e.rat()) er.push_back(to_real(v));
    auto l = apply_L(w, Scalar(Real(0.25)), 2, TruncSeries(er));
    for (int n = 0; n <= 10; ++n) {
        Real d = pow(Real(n + 1), Real(0.3)) - Real(0.25);
        EXPECT_LT(abs(l.real()[n] - er[n] * d * d).to_double(), 1e-60);
    }
}
