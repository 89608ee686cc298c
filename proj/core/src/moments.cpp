#include "pairy/moments.hpp"

#include "pairy/errors.hpp"
#include "pairy/extrapolate.hpp"
#include "pairy/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pairy {

std::string to_string(Ensemble e) { return e == Ensemble::excursion ? "excursion" : "bridge"; }

Ensemble ensemble_from_string(const std::string& s) {
    if (s == "excursion" || s == "E") return Ensemble::excursion;
    if (s == "bridge" || s == "B") return Ensemble::bridge;
    throw DomainError("unknown ensemble '" + s + "'");
}

namespace {

void check_p(const Real& p) {
    if (p.sign() <= 0) throw DomainError("moments need p > 0");
    if (p == Real(0.5)) throw HalfPointError("p = 1/2 is singular; use the limit-half workflow");
}

Rat rising(const Rat& x, long m) {
    Rat r(1);
    for (long i = 0; i < m; ++i) r *= x + i;
    return r;
}

}  // namespace

std::vector<Real> mu_excursion(const Real& p, int s_max) {
    check_p(p);
    std::vector<Real> mu;
    mu.reserve(static_cast<size_t>(s_max) + 1);
    mu.emplace_back(-0.5);
    if (s_max >= 1) mu.push_back(gamma(p - 0.5) / (8 * sqrt_pi(p.prec())));
    for (int s = 2; s <= s_max; ++s) {
        Real x = Real(s) * (p + 0.5);
        Real v = mu[s - 1] * gamma_ratio(x - 1, x - p - 1) / 2;
        for (int k = 1; k < s; ++k) mul_add(v, mu[k], mu[s - k]);
        mu.push_back(std::move(v));
    }
    return mu;
}

std::vector<Real> mu_bridge(const Real& p, int s_max) {
    auto me = mu_excursion(p, s_max);
    std::vector<Real> mb;
    mb.emplace_back(1);
    for (int s = 1; s <= s_max; ++s) {
        Real v(0);
        for (int k = 0; k < s; ++k) mul_add(v, mb[k], me[s - k]);
        mb.push_back(2 * v);
    }
    return mb;
}

std::vector<Rat> mu_excursion_exact(long p, int s_max) {
    if (p < 1) throw DomainError("exact moments need integer p >= 1");
    std::vector<Rat> mu;
    mu.emplace_back(-1, 2);
    if (s_max >= 1) mu.push_back(rising(Rat(1, 2), p - 1) / 8);
    for (int s = 2; s <= s_max; ++s) {
        // Gamma(y+p)/(2 Gamma(y)), y = s(p+1/2) - p - 1
        Rat y = Rat(s) * (Rat(p) + Rat(1, 2)) - p - 1;
        Rat v = mu[s - 1] * rising(y, p) / 2;
        for (int k = 1; k < s; ++k) v += mu[k] * mu[s - k];
        v.canonicalize();
        mu.push_back(v);
    }
    return mu;
}

std::vector<Rat> mu_bridge_exact(long p, int s_max) {
    auto me = mu_excursion_exact(p, s_max);
    std::vector<Rat> mb;
    mb.emplace_back(1);
    for (int s = 1; s <= s_max; ++s) {
        Rat v(0);
        for (int k = 0; k < s; ++k) v += mb[k] * me[s - k];
        mb.push_back(2 * v);
    }
    return mb;
}

std::vector<Real> rescaled_moments(Ensemble e, const Real& p, int s_max) {
    const Real sp = sqrt_pi(p.prec());
    std::vector<Real> out;
    Real fact(1);
    if (e == Ensemble::excursion) {
        auto mu = mu_excursion(p, s_max);
        for (int s = 0; s <= s_max; ++s) {
            if (s > 0) fact *= s;
            out.push_back(4 * sp * fact * rgamma((p + 0.5) * s - 0.5) * mu[s]);
        }
    } else {
        auto mu = mu_bridge(p, s_max);
        for (int s = 0; s <= s_max; ++s) {
            if (s > 0) fact *= s;
            out.push_back(sp * fact * rgamma((p + 0.5) * s + 0.5) * mu[s]);
        }
    }
    out[0] = Real(1);
    return out;
}

Real canonical_shift(const Real& p) {
    check_p(p);
    return gamma(p - 0.5) / (2 * gamma(p));
}

std::vector<Real> binomial_transform(const std::vector<Real>& m, const Real& t) {
    std::vector<Real> out;
    const int s_max = static_cast<int>(m.size()) - 1;
    Real mt = -t;
    for (int s = 0; s <= s_max; ++s) {
        Real acc(0);
        Real c(1);  // binom(s,j) (-t)^(s-j), j from s down
        for (int j = s; j >= 0; --j) {
            mul_add(acc, c, m[j]);
            if (j > 0) c = c * mt * Real(j) / Real(s - j + 1);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

namespace {

// log2 of sum |terms| / max(1, |result|)
double cancellation_bits(const std::vector<Real>& m, const Real& t, const std::vector<Real>& res) {
    double worst = 0;
    for (size_t s = 0; s < m.size(); ++s) {
        Real acc(0), c(1);
        for (size_t j = s + 1; j-- > 0;) {
            acc += abs(c * m[j]);
            if (j > 0) c = c * abs(t) * Real(static_cast<long>(j)) / Real(static_cast<long>(s - j + 1));
        }
        Real denom = max(abs(res[s]), Real(1));
        double b = std::log2((acc / denom).to_double());
        worst = std::max(worst, b);
    }
    return worst;
}

}  // namespace

std::vector<Real> shifted_moments(Ensemble e, const Real& p, int s_max, const Real& t) {
    const unsigned target = working_precision();
    unsigned bits = target + 32;
    for (int attempt = 0; attempt < 6; ++attempt) {
        PrecisionScope ps(bits);
        Real pp = p.with_prec(bits);
        Real tt = t.with_prec(bits);
        auto m = rescaled_moments(e, pp, s_max);
        auto res = binomial_transform(m, tt);
        double lost = cancellation_bits(m, tt, res);
        unsigned need = target + static_cast<unsigned>(std::ceil(lost)) + 16;
        if (need <= bits || attempt == 5) {
            for (auto& v : res) v.set_prec(target);
            return res;
        }
        bits = need + 32;
    }
    return {};
}

MomentTable moment_table(Ensemble e, const Real& p, int s_max, const std::optional<Rat>& p_exact) {
    MomentTable t{e, p, s_max, {}, std::nullopt, {}, Real(0), {}};
    if (p_exact && p_exact->get_den() == 1 && *p_exact >= 1) {
        long pi_ = p_exact->get_num().get_si();
        t.mu_exact = e == Ensemble::excursion ? mu_excursion_exact(pi_, s_max) : mu_bridge_exact(pi_, s_max);
        for (const auto& q : *t.mu_exact) t.mu.emplace_back(q);
    } else {
        t.mu = e == Ensemble::excursion ? mu_excursion(p, s_max) : mu_bridge(p, s_max);
    }
    t.rescaled = rescaled_moments(e, p, s_max);
    t.shift_t = canonical_shift(p);
    t.shifted = shifted_moments(e, p, s_max, t.shift_t);
    return t;
}

std::vector<Rat> takacs_K(int s_max) {
    std::vector<Rat> k;
    k.emplace_back(-1, 2);
    for (int s = 1; s <= s_max; ++s) {
        Rat v = Rat(3 * s - 4, 4) * k[s - 1];
        for (int j = 1; j < s; ++j) v += k[j] * k[s - j];
        v.canonicalize();
        k.push_back(v);
    }
    return k;
}

Real airy_moment(int s) {
    if (s < 0) throw DomainError("airy_moment needs s >= 0");
    auto k = takacs_K(s);
    Real two(2);
    return sqrt_pi() * pow(two, Real(4 - s) / 2) * Real(factorial(static_cast<unsigned>(s))) *
           rgamma(Real(3 * s - 1) / 2) * Real(k[s]);
}

std::vector<Real> airy_moments(int s_max) {
    auto k = takacs_K(s_max);
    std::vector<Real> out;
    const Real sp = sqrt_pi();
    for (int s = 0; s <= s_max; ++s)
        out.push_back(sp * pow(Real(2), Real(4 - s) / 2) * Real(factorial(static_cast<unsigned>(s))) *
                      rgamma(Real(3 * s - 1) / 2) * Real(k[s]));
    return out;
}

BoundConstants bound_constants(const Real& p) {
    check_p(p);
    Real f = abs(gamma(p - 0.5)) / (8 * sqrt_pi(p.prec()) * gamma(p + 1));
    if (f <= Real(0.25)) return {f, Real(0.5), Real(0.5)};
    Real a = (1 + 4 * f) / 4;
    Real r = 4 * f / (1 + 4 * f);
    return {f, a, r};
}

BoundReport bound_report(const Real& p, int s_max) {
    auto bc = bound_constants(p);
    auto me = mu_excursion(p, s_max);
    auto mb = mu_bridge(p, s_max);
    // relative slack for the s = 1 equality case
    const Real slack = 1 + pow(Real(2), -static_cast<long>(working_precision()) + 16);
    BoundReport rep{p, bc, false, {}, Real(std::numeric_limits<double>::infinity()), {}};
    rep.conditions_hold = bc.R_p * bc.A_p * slack >= bc.f_p && 1 / (4 * bc.A_p) + bc.R_p <= slack &&
                          bc.R_p * slack >= Real(0.5);
    const Real inf(std::numeric_limits<double>::infinity());
    for (int s = 0; s <= s_max; ++s) {
        BoundRow row{s, Real(0), Real(0), inf, abs(mb[s]), Real(0), inf};
        Real g = gamma(p * s + 1);
        Real as = pow(bc.A_p, static_cast<long>(s));
        if (s >= 1) {
            row.mu_e_abs = abs(me[s]);
            row.bound_e = bc.R_p * as * g * Real(catalan(s - 1));
            if (!row.mu_e_abs.is_zero()) row.margin_e = row.bound_e / row.mu_e_abs;
            if (row.mu_e_abs > row.bound_e * slack) rep.failures.push_back("E@s=" + std::to_string(s));
            rep.min_margin = min(rep.min_margin, row.margin_e);
        }
        row.bound_b = as * g * Real(catalan(s));
        if (!row.mu_b_abs.is_zero()) row.margin_b = row.bound_b / row.mu_b_abs;
        if (row.mu_b_abs > row.bound_b * slack) rep.failures.push_back("B@s=" + std::to_string(s));
        rep.min_margin = min(rep.min_margin, row.margin_b);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

BoundReport verify_bounds(const Real& p, int s_max) {
    auto rep = bound_report(p, s_max);
    if (!rep.failures.empty()) {
        std::string f;
        for (auto& x : rep.failures) f += " " + x;
        throw BoundViolation("moment bound violated at p=" + p.str(6) + ":" + f + " (min margin " +
                             rep.min_margin.str(8) + ")");
    }
    return rep;
}

CarlemanFit carleman_fit(const Real& p, int s_lo, int s_hi) {
    auto m = rescaled_moments(Ensemble::excursion, p, s_hi);
    std::vector<double> c1, c2, c3, c4, y;
    for (int s = s_lo; s <= s_hi; ++s) {
        double ds = s;
        c1.push_back(ds * std::log(ds));
        c2.push_back(ds);
        c3.push_back(std::log(ds));
        c4.push_back(1.0);
        y.push_back(log(abs(m[s])).to_double());
    }
    auto x = least_squares({c1, c2, c3, c4}, y);
    double worst = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        double fit = x[0] * c1[i] + x[1] * c2[i] + x[2] * c3[i] + x[3];
        worst = std::max(worst, std::fabs(fit - y[i]));
    }
    return {x[0], x[1], worst};
}

std::vector<LimitHalfRow> limit_half_moments(int s_max, const std::vector<Real>& deltas_in) {
    std::vector<Real> deltas = deltas_in;
    if (deltas.empty()) deltas = {Real(1e-2), Real(1e-3), Real(1e-4)};
    for (auto& d : deltas) d = abs(d);
    std::sort(deltas.begin(), deltas.end(), [](const Real& a, const Real& b) { return a < b; });
    const Real half(0.5);
    const Real scale = 2 * sqrt_pi();

    // vals[i][s]: node i in order +d0, -d0, +d1, -d1, ...
    std::vector<Real> nodes;
    std::vector<std::vector<Real>> vals;
    for (const auto& d : deltas) {
        for (int sg : {1, -1}) {
            Real p = half + Real(sg) * d;
            Real t = canonical_shift(p);
            auto sh = shifted_moments(Ensemble::excursion, p, s_max, t);
            Real f(1);
            for (int s = 0; s <= s_max; ++s) {
                sh[s] *= f;
                f *= scale;
            }
            nodes.push_back(Real(sg) * d);
            vals.push_back(std::move(sh));
        }
    }
    std::vector<LimitHalfRow> out;
    const Real zero(0);
    for (int s = 0; s <= s_max; ++s) {
        LimitHalfRow row{s, Real(0), Real(0), {}};
        for (size_t k = 1; k <= deltas.size(); ++k) {
            std::vector<Real> xs(nodes.begin(), nodes.begin() + 2 * k), ys;
            for (size_t i = 0; i < 2 * k; ++i) ys.push_back(vals[i][s]);
            row.levels.push_back(neville(xs, ys, zero));
        }
        row.value = row.levels.back();
        const size_t L = row.levels.size();
        if (L >= 2) {
            row.error = abs(row.levels[L - 1] - row.levels[L - 2]);
        } else {
            row.error = abs(vals[0][s] - vals[1][s]) / 2;
        }
        if (L >= 3) {
            Real prev = abs(row.levels[L - 2] - row.levels[L - 3]);
            Real floor_ = max(abs(row.value), Real(1)) * pow(Real(2), -static_cast<long>(working_precision()) / 2);
            if (row.error > prev && row.error > floor_)
                throw ExtrapolationUnstable("limit-half extrapolation not converging at s=" + std::to_string(s));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<Rat> tau_log_coeffs_closed(int s_max) {
    if (s_max < 2) throw DomainError("tau_log needs s_max >= 2");
    std::vector<Rat> q(static_cast<size_t>(s_max) + 1, Rat(0));
    for (int l = 1; 2 * l <= s_max; ++l) {
        // C_{l-1} 2^(1-l) (1/4)^l
        Rat v = catalan(l - 1);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(l - 1 + 2 * l));
        v /= Rat(den);
        v.canonicalize();
        q[2 * l] = v;
    }
    return q;
}

std::vector<Rat> tau_log_coeffs_recursion(int s_max) {
    if (s_max < 2) throw DomainError("tau_log needs s_max >= 2");
    std::vector<Rat> q(static_cast<size_t>(s_max) + 1, Rat(0));
    q[2] = Rat(1, 4);
    for (int s = 3; s <= s_max; ++s) {
        Rat v(0);
        for (int k = 2; k <= s - 2; ++k) v += q[k] * q[s - k];
        v /= 2;
        v.canonicalize();
        q[s] = v;
    }
    return q;
}

std::vector<Real> tau_log(int s_max) {
    auto q = tau_log_coeffs_closed(s_max);
    const Real g = euler_gamma();
    std::vector<Real> out;
    for (int s = 0; s <= s_max; ++s)
        out.push_back(s % 2 == 0 ? Real(q[s]) * pow(g, static_cast<long>(s / 2)) : Real(0));
    return out;
}

std::vector<Real> gaussian_log_moments(int s_max) {
    // bar M_s = s! tau_s 2 sqrt(pi) / Gamma((s-1)/2) for s >= 2
    auto tau = tau_log(std::max(s_max, 2));
    std::vector<Real> out;
    out.emplace_back(1);
    const Real sp = sqrt_pi();
    for (int s = 1; s <= s_max; ++s) {
        if (s % 2 == 1) {
            out.emplace_back(0);
            continue;
        }
        out.push_back(Real(factorial(static_cast<unsigned>(s))) * tau[s] * 2 * sp * rgamma(Real(s - 1) / 2));
    }
    return out;
}

}  // namespace pairy
