#include "pairy/numerics.hpp"

#include "pairy/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace pairy {

namespace {

std::unique_ptr<Constants> make_constants(unsigned bits) {
    auto mk = [bits](auto&& f) {
        Real r(Real::Prec{bits});
        f(r.get());
        return r;
    };
    Real pi_ = mk([](mpfr_ptr v) { mpfr_const_pi(v, MPFR_RNDN); });
    Real sp = sqrt(pi_);
    Real eg = mk([](mpfr_ptr v) { mpfr_const_euler(v, MPFR_RNDN); });
    Real l2 = mk([](mpfr_ptr v) { mpfr_const_log2(v, MPFR_RNDN); });
    Real z2 = mk([](mpfr_ptr v) { mpfr_zeta_ui(v, 2, MPFR_RNDN); });
    Real z3 = mk([](mpfr_ptr v) { mpfr_zeta_ui(v, 3, MPFR_RNDN); });
    Real z5 = mk([](mpfr_ptr v) { mpfr_zeta_ui(v, 5, MPFR_RNDN); });
    return std::unique_ptr<Constants>(new Constants{pi_, sp, eg, l2, z2, z3, z5});
}

std::mutex g_const_mu;
std::map<unsigned, std::unique_ptr<Constants>> g_const;

unsigned resolve(unsigned bits) { return bits ? bits : working_precision(); }

}  // namespace

const Constants& constants(unsigned bits) {
    bits = resolve(bits);
    std::lock_guard<std::mutex> lk(g_const_mu);
    auto it = g_const.find(bits);
    if (it == g_const.end()) it = g_const.emplace(bits, make_constants(bits)).first;
    return *it->second;
}

Real pi(unsigned bits) { return constants(bits).pi; }
Real sqrt_pi(unsigned bits) { return constants(bits).sqrt_pi; }
Real euler_gamma(unsigned bits) { return constants(bits).euler_gamma; }
Real ln2(unsigned bits) { return constants(bits).ln2; }

Real zeta(unsigned n, unsigned bits) {
    if (n < 2) throw PoleError("zeta(n) needs n >= 2");
    Real r(Real::Prec{resolve(bits)});
    mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
    return r;
}

mpz_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rat catalan(long n) {
    if (n < 0) throw DomainError("catalan needs n >= 0");
    mpz_class b = binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n));
    Rat q(b, mpz_class(n + 1));
    q.canonicalize();
    return q;
}

Rat normalized_catalan(long k) {
    Rat c = catalan(k);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(2 * k + 1));
    Rat q = c / Rat(den);
    q.canonicalize();
    return q;
}

Rat double_factorial(long n) {
    if (n < -1) throw DomainError("double_factorial needs n >= -1");
    if (n <= 0) return Rat(1);
    mpz_class r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(r);
}

}  // namespace pairy
