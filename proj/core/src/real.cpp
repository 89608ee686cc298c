#include "pairy/real.hpp"

#include "pairy/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <vector>

namespace pairy {

namespace {

std::atomic<unsigned> g_default_prec{256};
thread_local unsigned t_prec = 0;

unsigned pmax(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

unsigned default_precision() { return g_default_prec.load(std::memory_order_relaxed); }

void set_default_precision(unsigned bits) {
    if (bits < 16) bits = 16;
    g_default_prec.store(bits, std::memory_order_relaxed);
}

unsigned working_precision() { return t_prec ? t_prec : default_precision(); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(t_prec) { t_prec = std::max(bits, 16u); }
PrecisionScope::~PrecisionScope() { t_prec = saved_; }

Real::Real() {
    mpfr_init2(v_, working_precision());
    mpfr_set_zero(v_, 1);
}

Real::Real(Prec p) {
    mpfr_init2(v_, std::max<unsigned>(p.bits, 16));
    mpfr_set_zero(v_, 1);
}

Real::Real(int v) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(long v) {
    mpfr_init2(v_, working_precision());
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(unsigned long v) {
    mpfr_init2(v_, working_precision());
    mpfr_set_ui(v_, v, MPFR_RNDN);
}

Real::Real(long long v) {
    mpfr_init2(v_, working_precision());
    mpfr_set_sj(v_, static_cast<intmax_t>(v), MPFR_RNDN);
}

Real::Real(double v) {
    mpfr_init2(v_, working_precision());
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rat& q) {
    mpfr_init2(v_, working_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const mpz_class& z) {
    mpfr_init2(v_, working_precision());
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const std::string& s) {
    mpfr_init2(v_, working_precision());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw DomainError("not a number: '" + s + "'");
    }
}

Real::Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        if (prec() != o.prec()) mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::set_prec(unsigned bits) { mpfr_prec_round(v_, std::max(bits, 16u), MPFR_RNDN); }

Real Real::with_prec(unsigned bits) const {
    Real r(Prec{bits});
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(std::ceil(prec() * 0.30103)) + 1;
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Real& Real::operator+=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(Prec{prec()});
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(Real::Prec{pmax(a, b)});
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(Real::Prec{pmax(a, b)});
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(Real::Prec{pmax(a, b)});
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(Real::Prec{pmax(a, b)});
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
    auto p = os.precision();
    return os << x.str(p > 0 ? static_cast<int>(p) : 0);
}

Real to_real(const Rat& q) { return Real(q); }

namespace {

template <class F>
Real unary(const Real& x, F f) {
    Real r(Real::Prec{x.prec()});
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) {
    if (x.sign() < 0) throw DomainError("sqrt of negative number");
    return unary(x, mpfr_sqrt);
}
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) {
    if (x.sign() <= 0) throw DomainError("log of non-positive number");
    return unary(x, mpfr_log);
}
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real floor(const Real& x) {
    Real r(Real::Prec{x.prec()});
    mpfr_floor(r.get(), x.get());
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r(Real::Prec{x.prec()});
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(Real::Prec{pmax(x, y)});
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n) {
    Real r(Real::Prec{x.prec()});
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real fma(const Real& a, const Real& b, const Real& c) {
    Real r(Real::Prec{std::max(pmax(a, b), c.prec())});
    mpfr_fma(r.get(), a.get(), b.get(), c.get(), MPFR_RNDN);
    return r;
}

void mul_add(Real& acc, const Real& a, const Real& b) {
    mpfr_fma(acc.get(), a.get(), b.get(), acc.get(), MPFR_RNDN);
}

namespace {

bool is_nonpositive_integer(const Real& x) { return x.sign() <= 0 && x.is_integer(); }

}  // namespace

Real gamma(const Real& x) {
    if (is_nonpositive_integer(x)) throw PoleError("Gamma pole at " + x.str(10));
    return unary(x, mpfr_gamma);
}

Real digamma(const Real& x) {
    if (x.sign() <= 0 && x.is_integer()) throw PoleError("digamma pole at " + x.str(10));
    Real r(Real::Prec{x.prec()});
    mpfr_digamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log_gamma(const Real& x) {
    if (x.sign() <= 0) throw DomainError("log_gamma needs x > 0, got " + x.str(10));
    return unary(x, mpfr_lngamma);
}

Real rgamma(const Real& x) {
    if (is_nonpositive_integer(x)) return Real(Real::Prec{x.prec()});
    Real g = unary(x, mpfr_gamma);
    Real one(Real::Prec{x.prec()});
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    return one / g;
}

Real gamma_ratio(const Real& x, const Real& y) {
    if (x.sign() > 0 && y.sign() > 0) return exp(log_gamma(x) - log_gamma(y));
    return gamma(x) * rgamma(y);
}

Real airy_ai(const Real& x) { return unary(x, mpfr_ai); }

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
    Rat q;
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        if (q.set_str(s, 10) != 0) throw DomainError("not a rational: '" + s + "'");
        q.canonicalize();
        return q;
    }
    // plain decimal like 0.25
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw DomainError("not a rational: '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q = Rat(num, den);
    q.canonicalize();
    return q;
}

}  // namespace pairy
