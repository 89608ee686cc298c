#include "pairy/costs.hpp"

#include "pairy/errors.hpp"
#include "pairy/extrapolate.hpp"
#include "pairy/numerics.hpp"

#include <cmath>
#include <limits>

namespace pairy {

std::string to_string(CostFamily f) {
    switch (f) {
        case CostFamily::gamma_ratio: return "gamma-ratio";
        case CostFamily::gamma_ratio_32: return "gamma-ratio-32";
        case CostFamily::power_half: return "power-half";
        case CostFamily::power_one: return "power-one";
        case CostFamily::pure_power: return "pure-power";
        case CostFamily::log_shift: return "log-shift";
    }
    return "?";
}

CostFamily cost_family_from_string(const std::string& s) {
    for (auto f : {CostFamily::gamma_ratio, CostFamily::gamma_ratio_32, CostFamily::power_half,
                   CostFamily::power_one, CostFamily::pure_power, CostFamily::log_shift})
        if (to_string(f) == s) return f;
    throw DomainError("unknown cost family '" + s + "'");
}

std::string to_string(AlphaMethod m) {
    return m == AlphaMethod::closed_form ? "closed_form" : "regularized_series";
}

CostFunction::CostFunction(CostFamily f, Real p, Real a, std::optional<Rat> pr, std::optional<Rat> ar)
    : family_(f), p_(std::move(p)), a_(std::move(a)), p_rat_(std::move(pr)), a_rat_(std::move(ar)) {
    validate();
}

CostFunction CostFunction::gamma_ratio(const Rat& a, const Rat& p) {
    return CostFunction(CostFamily::gamma_ratio, Real(p), Real(a), p, a);
}
CostFunction CostFunction::gamma_ratio(const Real& a, const Real& p) {
    return CostFunction(CostFamily::gamma_ratio, p, a, std::nullopt, std::nullopt);
}
CostFunction CostFunction::gamma_ratio_32(const Rat& a, const Rat& p) {
    return CostFunction(CostFamily::gamma_ratio_32, Real(p), Real(a), p, a);
}
CostFunction CostFunction::gamma_ratio_32(const Real& a, const Real& p) {
    return CostFunction(CostFamily::gamma_ratio_32, p, a, std::nullopt, std::nullopt);
}
CostFunction CostFunction::power_half(const Rat& p) {
    return CostFunction(CostFamily::power_half, Real(p), Real(0), p, std::nullopt);
}
CostFunction CostFunction::power_half(const Real& p) {
    return CostFunction(CostFamily::power_half, p, Real(0), std::nullopt, std::nullopt);
}
CostFunction CostFunction::power_one(const Rat& p) {
    return CostFunction(CostFamily::power_one, Real(p), Real(0), p, std::nullopt);
}
CostFunction CostFunction::power_one(const Real& p) {
    return CostFunction(CostFamily::power_one, p, Real(0), std::nullopt, std::nullopt);
}
CostFunction CostFunction::pure_power(const Rat& p) {
    return CostFunction(CostFamily::pure_power, Real(p), Real(0), p, std::nullopt);
}
CostFunction CostFunction::pure_power(const Real& p) {
    return CostFunction(CostFamily::pure_power, p, Real(0), std::nullopt, std::nullopt);
}
CostFunction CostFunction::log_shift() {
    return CostFunction(CostFamily::log_shift, Real(0), Real(0), Rat(0), std::nullopt);
}

CostFunction CostFunction::with_p(const Real& p) const {
    return CostFunction(family_, p, a_, std::nullopt, a_rat_);
}

void CostFunction::validate() const {
    if (p_.sign() < 0) throw DomainError("cost exponent p must be >= 0");
    if (family_ == CostFamily::gamma_ratio && a_.sign() <= 0)
        throw DomainError("gamma-ratio family needs a > 0");
    if (family_ == CostFamily::gamma_ratio_32) {
        // all factors positive from k = 0 on
        if (a_.sign() <= 0 || (p_ + a_ - Real(1.5)).sign() <= 0)
            throw DomainError("gamma-ratio-32 family needs a > 0 and a + p > 3/2");
    }
}

Real CostFunction::eta() const {
    const Real one(1);
    switch (family_) {
        case CostFamily::gamma_ratio: {
            // Gamma(k+x)/Gamma(k+y) = k^(x-y) (1 + (x-y)(x+y-1)/(2k) + ...)
            Real c1 = p_ * (p_ + 2 * a_ - 1);
            return c1.is_zero() ? Real(2) : one;
        }
        case CostFamily::gamma_ratio_32: {
            Real c1 = (p_ - 1.5) * (p_ + 2 * a_ - 2.5) + Real(2.25);
            return c1.is_zero() ? Real(2) : one;
        }
        case CostFamily::power_half:
        case CostFamily::power_one: return p_.is_zero() ? Real(std::numeric_limits<double>::infinity()) : one;
        case CostFamily::pure_power: return Real(std::numeric_limits<double>::infinity());
        case CostFamily::log_shift: return one;
    }
    return one;
}

namespace {

// Gamma(x+m)/Gamma(x) for integer m
Rat rising_ratio(const Rat& x, long m) {
    Rat r(1);
    if (m >= 0) {
        for (long i = 0; i < m; ++i) r *= x + i;
    } else {
        for (long i = m; i < 0; ++i) {
            Rat f = x + i;
            if (f == 0) throw DomainError("gamma-ratio family hits a Gamma pole");
            r /= f;
        }
    }
    return r;
}

bool is_int(const Rat& q) { return q.get_den() == 1; }

}  // namespace

bool CostFunction::is_rational() const {
    if (!p_rat_) return false;
    switch (family_) {
        case CostFamily::gamma_ratio: return a_rat_.has_value() && is_int(*p_rat_);
        case CostFamily::gamma_ratio_32:
            return a_rat_.has_value() && is_int(*p_rat_) && is_int(*a_rat_);
        case CostFamily::power_half:
        case CostFamily::power_one:
        case CostFamily::pure_power: return is_int(*p_rat_);
        case CostFamily::log_shift: return false;
    }
    return false;
}

Rat CostFunction::evaluate_exact(long k) const {
    if (!is_rational()) throw KindMismatch("cost " + id() + " has no exact rational values");
    if (k < 0) throw DomainError("omega(k) needs k >= 0");
    const long p = p_rat_->get_num().get_si();
    switch (family_) {
        case CostFamily::gamma_ratio: return rising_ratio(Rat(k) + *a_rat_, p);
        case CostFamily::gamma_ratio_32: {
            // Gamma(k+1/2 + (p+a-2))/Gamma(k+1/2) * Gamma(k+2)/Gamma(k+a)
            long a = a_rat_->get_num().get_si();
            Rat half(1, 2);
            return rising_ratio(Rat(k) + half, p + a - 2) / rising_ratio(Rat(k + 2), a - 2);
        }
        case CostFamily::power_half: {
            Rat b = Rat(k) + Rat(1, 2), r(1);
            for (long i = 0; i < p; ++i) r *= b;
            return r;
        }
        case CostFamily::power_one: {
            Rat r(1);
            for (long i = 0; i < p; ++i) r *= k + 1;
            return r;
        }
        case CostFamily::pure_power: {
            if (k == 0) return Rat(p == 0 ? 1 : 0);
            Rat r(1);
            for (long i = 0; i < p; ++i) r *= k;
            return r;
        }
        case CostFamily::log_shift: break;
    }
    throw KindMismatch("no exact value");
}

Real CostFunction::evaluate(long k) const {
    if (k < 0) throw DomainError("omega(k) needs k >= 0");
    const Real kk(k);
    switch (family_) {
        case CostFamily::gamma_ratio: {
            Real x = kk + p_ + a_, y = kk + a_;
            if ((x.sign() <= 0 && x.is_integer()) || (y.sign() <= 0 && y.is_integer()))
                throw DomainError("gamma-ratio family hits a Gamma pole at k=" + std::to_string(k));
            return pairy::gamma_ratio(x, y);
        }
        case CostFamily::gamma_ratio_32: {
            Real x = kk + p_ + a_ - 1.5, y = kk + a_;
            if ((x.sign() <= 0 && x.is_integer()) || (y.sign() <= 0 && y.is_integer()))
                throw DomainError("gamma-ratio-32 family hits a Gamma pole at k=" + std::to_string(k));
            return pairy::gamma_ratio(x, y) * pairy::gamma_ratio(kk + 2, kk + 0.5);
        }
        case CostFamily::power_half: return pow(kk + 0.5, p_);
        case CostFamily::power_one: return pow(kk + 1, p_);
        case CostFamily::pure_power:
            if (k == 0) return p_.is_zero() ? Real(1) : Real(0);
            return pow(kk, p_);
        case CostFamily::log_shift: return log(kk + 1);
    }
    return Real(0);
}

namespace {

// Streams omega(0), omega(1), ... using ratio recurrences when possible.
class OmegaStream {
public:
    explicit OmegaStream(const CostFunction& cf) : cf_(cf), k_(0) {}

    Real next() {
        Real v;
        switch (cf_.family()) {
            case CostFamily::gamma_ratio:
                if (k_ == 0) {
                    cur_ = cf_.evaluate(0);
                } else {
                    Real km(k_ - 1);
                    cur_ *= (km + cf_.p() + cf_.a()) / (km + cf_.a());
                }
                v = cur_;
                break;
            case CostFamily::gamma_ratio_32:
                if (k_ == 0) {
                    cur_ = cf_.evaluate(0);
                } else {
                    Real km(k_ - 1);
                    cur_ *= (km + cf_.p() + cf_.a() - 1.5) * (km + 2) / ((km + cf_.a()) * (km + 0.5));
                }
                v = cur_;
                break;
            default: v = cf_.evaluate(k_); break;
        }
        ++k_;
        return v;
    }

private:
    const CostFunction& cf_;
    long k_;
    Real cur_;
};

}  // namespace

std::vector<Real> CostFunction::table(long n) const {
    std::vector<Real> out;
    out.reserve(static_cast<size_t>(std::max(0L, n)));
    OmegaStream st(*this);
    for (long k = 0; k < n; ++k) out.push_back(st.next());
    return out;
}

std::vector<Rat> CostFunction::table_exact(long n) const {
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(std::max(0L, n)));
    for (long k = 0; k < n; ++k) out.push_back(evaluate_exact(k));
    return out;
}

std::string CostFunction::id() const {
    std::string s = to_string(family_);
    auto fmt = [](const std::optional<Rat>& q, const Real& r) { return q ? rat_str(*q) : r.str(17); };
    if (has_a()) s += "(a=" + fmt(a_rat_, a_) + ",p=" + fmt(p_rat_, p_) + ")";
    else if (family_ != CostFamily::log_shift) s += "(p=" + fmt(p_rat_, p_) + ")";
    return s;
}

// ---------------------------------------------------------------- alpha

namespace {

bool is_half_point(const CostFunction& cf) {
    if (cf.family() == CostFamily::log_shift) return false;
    return cf.p() == Real(0.5);
}

// p = 3/2, 5/2, ...: one exponent of the ladder collides with the constant
bool is_half_integer_above(const CostFunction& cf) {
    if (cf.family() == CostFamily::log_shift) return false;
    Real twop = cf.p() * 2;
    if (!twop.is_integer()) return false;
    long n = twop.to_long();
    return n % 2 == 1 && n >= 3;
}

}  // namespace

AlphaResult alpha_closed_form(const CostFunction& cf) {
    if (cf.family() != CostFamily::gamma_ratio && cf.family() != CostFamily::gamma_ratio_32)
        throw NoClosedForm("no closed-form alpha for " + cf.id());
    if (is_half_point(cf)) throw PoleError("alpha has a pole at p = 1/2");
    const Real& p = cf.p();
    const Real& a = cf.a();
    const Real sp = sqrt_pi(p.prec());
    auto pole_at = [](const Real& x) { return x.sign() <= 0 && x.is_integer(); };

    Real v;
    if (cf.family() == CostFamily::gamma_ratio) {
        if (a == Real(0.5)) {
            v = -gamma(p - 0.5) / (2 * sp);
        } else {
            Real x = a + p - 1;
            // a > 0 leaves x = 0 as the only reachable pole; the bracket
            // vanishes there and the limit is its p-derivative
            if (x.is_zero()) {
                if (p.is_integer()) {
                    long n = p.to_long();
                    Real f(factorial(static_cast<unsigned>(n)));
                    return AlphaResult{n % 2 ? -f : f, AlphaMethod::closed_form, Real(0)};
                }
                v = (digamma(Real(0.5) - p) - digamma(-p)) * rgamma(-p);
                return AlphaResult{v, AlphaMethod::closed_form, Real(0)};
            }
            if (pole_at(x)) throw PoleError("alpha closed form: Gamma(a+p-1) pole");
            Real q = Real(0.5) - p;
            Real second(0);
            Real coef = rgamma(a - 0.5) * rgamma(-p);
            if (!coef.is_zero()) {
                if (pole_at(q)) throw PoleError("alpha closed form: Gamma(1/2-p) pole (logarithmic singularity)");
                second = gamma(q) * coef;
            }
            v = gamma(x) * (rgamma(a - 1) - second);
        }
    } else {
        Real x = a + p - 1.5;
        if (pole_at(x)) throw PoleError("alpha closed form: Gamma(a+p-3/2) pole");
        v = gamma(x) * rgamma(a - 1) / (sp * (1 - 2 * p));
    }
    return AlphaResult{v, AlphaMethod::closed_form, Real(0)};
}

namespace {

struct LadderFit {
    Real value;
    Real error;
};

// Partial sums S(K) = sum_{N<K} c_N omega(N) on K = k0*2^i, extrapolated
// with the exponent ladder K^(p-1/2-j) (or K^(-1/2-j){ln K, 1} for log).
LadderFit ladder_fit(const CostFunction& cf, const Real& tol, const AlphaNumericOptions& opt) {
    const bool logc = cf.family() == CostFamily::log_shift;
    const Real& p = cf.p();
    OmegaStream st(cf);
    Real c(0.5);  // c_0
    Real sum(0);
    long n = 0;
    std::vector<Real> ks, sums;
    Real prev_est;
    bool have_prev = false;
    Real prev_err;
    for (int lvl = 0; lvl < opt.max_levels; ++lvl) {
        long K = opt.k0 << lvl;
        for (; n < K; ++n) {
            mul_add(sum, c, st.next());
            c *= Real(2 * n + 1) / Real(2 * (n + 2));
        }
        ks.emplace_back(K);
        sums.push_back(sum);
        const size_t m = ks.size();
        if (m < 2) continue;
        // unknowns: alpha + (m-1) corrections
        std::vector<std::vector<Real>> A(m, std::vector<Real>(m));
        for (size_t i = 0; i < m; ++i) {
            const Real& k = ks[i];
            Real lk = log(k);
            A[i][0] = Real(1);
            for (size_t j = 1; j < m; ++j) {
                size_t o = j - 1;
                if (logc) {
                    long ord = static_cast<long>(o / 2);
                    Real base = pow(k, Real(-0.5) - Real(ord));
                    A[i][j] = (o % 2 == 0) ? base * lk : base;
                } else {
                    A[i][j] = pow(k, p - 0.5 - Real(static_cast<long>(o)));
                }
            }
        }
        auto x = solve_linear(A, sums);
        Real est = x[0];
        if (have_prev) {
            Real err = 4 * abs(est - prev_est);
            if (static_cast<int>(m) >= opt.min_levels && err <= tol) return {est, err};
            prev_err = err;
        }
        prev_est = est;
        have_prev = true;
    }
    throw ConvergenceError("alpha_numeric: ladder did not reach tolerance (last error " + prev_err.str(6) + ")");
}

}  // namespace

AlphaResult alpha_numeric(const CostFunction& cf, const Real& tol, const AlphaNumericOptions& opt) {
    if (tol.sign() <= 0) throw DomainError("alpha_numeric needs tol > 0");
    if (is_half_point(cf)) throw PoleError("alpha has a pole at p = 1/2");
    const unsigned out_prec = working_precision();
    PrecisionScope guard(out_prec + 64);
    Real p = cf.p().with_prec(out_prec + 64);

    if (!is_half_integer_above(cf)) {
        auto f = ladder_fit(cf, tol, opt);
        f.value.set_prec(out_prec);
        f.error.set_prec(out_prec);
        return AlphaResult{f.value, AlphaMethod::regularized_series, f.error};
    }

    // Half-integer p >= 3/2: the exponent p-1/2-j hits 0. Continue alpha
    // analytically from p +- h; a nonzero odd part means a genuine pole.
    std::vector<Real> h2, even, odd;
    Real inner_err(0);
    for (int i = 0; i < 4; ++i) {
        Real h = Real(1) / Real(128L << i);
        auto up = ladder_fit(cf.with_p(p + h), tol / 100, opt);
        auto dn = ladder_fit(cf.with_p(p - h), tol / 100, opt);
        h2.push_back(h * h);
        even.push_back((up.value + dn.value) / 2);
        odd.push_back(h * (up.value - dn.value) / 2);
        inner_err = max(inner_err, max(up.error, dn.error));
    }
    Real zero(0);
    Real val = neville(h2, even, zero);
    Real val3 = neville({h2.begin() + 1, h2.end()}, {even.begin() + 1, even.end()}, zero);
    Real res = neville(h2, odd, zero);
    Real scale = max(abs(val), Real(1));
    if (abs(res) > scale * Real(1e-8))
        throw PoleError("alpha has a logarithmic singularity at p = " + cf.p().str(6) + " (residue " +
                        res.str(6) + ")");
    Real err = 4 * abs(val - val3) + inner_err;
    val.set_prec(out_prec);
    err.set_prec(out_prec);
    return AlphaResult{val, AlphaMethod::regularized_series, err};
}

AlphaResult alpha(const CostFunction& cf, const Real& tol) {
    try {
        return alpha_closed_form(cf);
    } catch (const NoClosedForm&) {
        return alpha_numeric(cf, tol);
    }
}

}  // namespace pairy
