#pragma once

#include "pairy/real.hpp"

namespace pairy {

// Constants at a given precision (0 = working precision). Cached per
// precision; the cache is shared across threads.
struct Constants {
    Real pi;
    Real sqrt_pi;
    Real euler_gamma;
    Real ln2;
    Real zeta2;
    Real zeta3;
    Real zeta5;
};

const Constants& constants(unsigned bits = 0);

Real pi(unsigned bits = 0);
Real sqrt_pi(unsigned bits = 0);
Real euler_gamma(unsigned bits = 0);
Real ln2(unsigned bits = 0);
// zeta(n) for integer n >= 2
Real zeta(unsigned n, unsigned bits = 0);

mpz_class factorial(unsigned n);
mpz_class binomial(unsigned n, unsigned k);
Rat catalan(long n);
// c_k = 2^(-2k-1) C_k
Rat normalized_catalan(long k);
// n!! with (-1)!! = 1
Rat double_factorial(long n);

}  // namespace pairy
