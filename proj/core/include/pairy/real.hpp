#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <iosfwd>
#include <string>

namespace pairy {

using Rat = mpq_class;

// Working precision in bits. The process default can be changed once at
// startup; PrecisionScope overrides it for the current thread.
unsigned default_precision();
void set_default_precision(unsigned bits);
unsigned working_precision();

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

class Real {
public:
    struct Prec {
        unsigned bits;
    };

    Real();
    explicit Real(Prec p);
    Real(int v);
    Real(long v);
    Real(unsigned long v);
    Real(long long v);
    Real(double v);
    explicit Real(const Rat& q);
    explicit Real(const mpz_class& z);
    // decimal string, parsed at working precision
    explicit Real(const std::string& s);
    explicit Real(const char* s) : Real(std::string(s)) {}

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    unsigned prec() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    // round to a new precision, in place
    void set_prec(unsigned bits);
    Real with_prec(unsigned bits) const;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    // digits == 0 picks enough digits for the precision
    std::string str(int digits = 0) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real to_real(const Rat& q);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real expm1(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real sin(const Real& x);
Real cos(const Real& x);
Real floor(const Real& x);
// x * 2^e, exact
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// a*b + c in one rounding, at the max precision of the inputs
Real fma(const Real& a, const Real& b, const Real& c);
// acc += a*b in place (hot loops)
void mul_add(Real& acc, const Real& a, const Real& b);

// Gamma family. gamma throws PoleError at non-positive integers,
// log_gamma throws DomainError for x <= 0, rgamma is 1/Gamma (0 at poles).
Real gamma(const Real& x);
Real log_gamma(const Real& x);
Real rgamma(const Real& x);
// psi = Gamma'/Gamma; PoleError at non-positive integers
Real digamma(const Real& x);
// Gamma(x+a)/Gamma(x+b) via log-gamma when both arguments are positive
Real gamma_ratio(const Real& x, const Real& y);
// Airy function Ai
Real airy_ai(const Real& x);

// Rational helpers
std::string rat_str(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace pairy
