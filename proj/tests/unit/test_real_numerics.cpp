#include "pairy/errors.hpp"
#include "pairy/numerics.hpp"
#include "pairy/real.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pairy;

namespace {

double rel(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }

}  // namespace

TEST(Gamma, HalfIsSqrtPi) {
    EXPECT_LT(rel(gamma(Real(0.5)), sqrt_pi()), 1e-70);
    EXPECT_LT(rel(gamma(Real(-0.5)), Real(-2) * sqrt_pi()), 1e-70);
    EXPECT_EQ(gamma(Real(5)), Real(24));
}

TEST(Gamma, PolesThrow) {
    EXPECT_THROW(gamma(Real(0)), PoleError);
    EXPECT_THROW(gamma(Real(-3)), PoleError);
    EXPECT_THROW(log_gamma(Real(-1.5)), DomainError);
    EXPECT_TRUE(rgamma(Real(-2)).is_zero());
}

TEST(Gamma, LogGammaAgainstProductRecursion) {
    EXPECT_TRUE(log_gamma(Real(1)).is_zero());
    EXPECT_LT(abs(log_gamma(Real(0.5)) - log(sqrt_pi())).to_double(), 1e-70);
    // Gamma(10.25) = Gamma(0.25) prod_{j=0}^{9} (0.25 + j)
    Real g = gamma(Real(0.25));
    for (int j = 0; j < 10; ++j) g *= Real(0.25) + Real(j);
    EXPECT_LT(abs(log_gamma(Real(10.25)) - log(g)).to_double(), 1e-70);
}

TEST(Gamma, RatioAndDigamma) {
    EXPECT_LT(rel(gamma_ratio(Real(7.5), Real(2.25)), gamma(Real(7.5)) / gamma(Real(2.25))), 1e-70);
    // psi(1) = -gamma_E, psi(1/2) = -gamma_E - 2 ln 2
    EXPECT_LT(rel(digamma(Real(1)), -euler_gamma()), 1e-70);
    EXPECT_LT(rel(digamma(Real(0.5)), -euler_gamma() - Real(2) * ln2()), 1e-70);
    EXPECT_THROW(digamma(Real(-2)), PoleError);
}

TEST(Precision, ScopeRestores) {
    unsigned before = working_precision();
    {
        PrecisionScope ps(80);
        EXPECT_EQ(working_precision(), 80u);
        EXPECT_EQ(Real(1).prec(), 80u);
    }
    EXPECT_EQ(working_precision(), before);
}

TEST(Precision, ConstantsAtRequestedBits) {
    EXPECT_EQ(pi(512).prec(), 512u);
    PrecisionScope ps(512);
    Real ref("3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798");
    EXPECT_LT(abs(pi(512) - ref).to_double(), 1e-100);
    EXPECT_LT(abs(zeta(2) - pi() * pi() / Real(6)).to_double(), 1e-70);
}

TEST(Combinatorics, Catalan) {
    EXPECT_EQ(catalan(0), Rat(1));
    EXPECT_EQ(catalan(3), Rat(5));
    EXPECT_EQ(catalan(14), Rat(2674440));
    for (int n = 0; n <= 30; ++n) {
        // binomial formula
        Rat b(binomial(2 * n, n));
        b /= n + 1;
        b.canonicalize();
        EXPECT_EQ(catalan(n), b) << n;
        EXPECT_EQ(catalan(n), oracle::catalan(n)) << n;
    }
}

TEST(Combinatorics, NormalizedCatalan) {
    EXPECT_EQ(normalized_catalan(0), Rat(1, 2));
    EXPECT_EQ(normalized_catalan(1), Rat(1, 8));
    EXPECT_EQ(normalized_catalan(2), Rat(1, 16));
    // c_k = Gamma(k+1/2)/(2 sqrt(pi) Gamma(k+2))
    for (int k = 0; k <= 20; ++k) {
        Real v = gamma(Real(k) + Real(0.5)) / (Real(2) * sqrt_pi() * gamma(Real(k + 2)));
        EXPECT_LT(rel(to_real(normalized_catalan(k)), v), 1e-70) << k;
    }
}

TEST(Combinatorics, NormalizedCatalanSumsToOne) {
    // sum c_k = 1, tail ~ k^(-1/2)/sqrt(pi)
    Rat s(0);
    const int K = 2000;
    for (int k = 0; k < K; ++k) s += normalized_catalan(k);
    double tail = 1.0 - s.get_d();
    EXPECT_NEAR(tail * std::sqrt(M_PI * K), 1.0, 1e-3);
}

TEST(Combinatorics, DoubleFactorial) {
    EXPECT_EQ(double_factorial(-1), Rat(1));
    EXPECT_EQ(double_factorial(0), Rat(1));
    EXPECT_EQ(double_factorial(5), Rat(15));
    EXPECT_EQ(double_factorial(8), Rat(384));
    EXPECT_EQ(factorial(10), mpz_class(3628800));
}

TEST(Rational, StringRoundTrip) {
    Rat q = rat_from_string("-15/128");
    EXPECT_EQ(q, Rat(-15, 128));
    EXPECT_EQ(rat_str(q), "-15/128");
    EXPECT_EQ(rat_from_string("0.25"), Rat(1, 4));
}
