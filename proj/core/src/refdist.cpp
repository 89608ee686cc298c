#include "pairy/refdist.hpp"

#include "pairy/errors.hpp"
#include "pairy/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace pairy {

namespace {

// asymptotic zero for t = 3 pi (4k-1)/8 at the current precision
Real zero_asymptotic_real(long k) {
    Real t = pi() * Real(3 * (4 * k - 1)) / Real(8);
    Real t2 = Real(1) / (t * t);
    // 1 + 5/48 t^-2 - 5/36 t^-4 + 77125/82944 t^-6 - 108056875/6967296 t^-8
    Real s = Real(Rat(-108056875, 6967296));
    s = s * t2 + Real(Rat(77125, 82944));
    s = s * t2 + Real(Rat(-5, 36));
    s = s * t2 + Real(Rat(5, 48));
    s = s * t2 + Real(1);
    return pow(t, Real(Rat(2, 3))) * s;
}

// Illinois false position on Ai(-x) around the seed
Real refine_zero(int k, unsigned bits) {
    PrecisionScope ps(bits + 32);
    Real seed = zero_asymptotic_real(k);
    auto f = [](const Real& x) { return airy_ai(-x); };
    Real d = k == 1 ? Real(0.02) : Real(0.005);
    Real lo, hi, flo, fhi;
    bool ok = false;
    for (int i = 0; i < 12 && !ok; ++i, d *= Real(2)) {
        lo = seed - d;
        hi = seed + d;
        flo = f(lo);
        fhi = f(hi);
        ok = flo.sign() * fhi.sign() < 0;
    }
    if (!ok) throw ConvergenceError("no sign change bracketing Airy zero " + std::to_string(k));
    Real tol = ldexp(hi, -static_cast<long>(bits) - 4);
    int side = 0;
    for (int it = 0; it < 400; ++it) {
        Real x = (lo * fhi - hi * flo) / (fhi - flo);
        Real fx = f(x);
        if (fx.is_zero()) return x.with_prec(bits);
        if (fx.sign() == flo.sign()) {
            lo = x;
            flo = fx;
            if (side == -1) fhi /= Real(2);
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo /= Real(2);
            side = 1;
        }
        if (hi - lo < tol) return ((lo + hi) / Real(2)).with_prec(bits);
    }
    throw ConvergenceError("Airy zero " + std::to_string(k) + " did not converge");
}

std::mutex zero_mu;
std::map<unsigned, std::vector<Real>> zero_cache;

Real rising_term_ratio(const Real& a, const Real& b, long n, const Real& z) {
    return (a + Real(n)) / ((b + Real(n)) * Real(n + 1)) * z;
}

Real m_series(const Real& a, const Real& b, const Real& z, unsigned wp) {
    PrecisionScope ps(wp);
    Real t(1), s(1);
    Real eps = ldexp(Real(1), -static_cast<long>(wp));
    const double zd = z.to_double();
    for (long n = 0; n < 200000; ++n) {
        t *= rising_term_ratio(a, b, n, z);
        s += t;
        if (t.is_zero()) return s;
        if (n > zd && n > 2 && abs(t) < eps * abs(s)) return s;
    }
    throw ConvergenceError("Kummer series did not converge");
}

// z^-a sum (a)_n (a-b+1)_n / n! (-z)^-n, truncated at the smallest term
bool u_asymptotic(const Real& a, const Real& b, const Real& z, unsigned wp, Real& out) {
    PrecisionScope ps(wp);
    Real t(1), s(1), prev = Real(1);
    Real eps = ldexp(Real(1), -static_cast<long>(wp));
    Real c = a - b + Real(1);
    for (long n = 0; n < 100000; ++n) {
        Real nt = -t * (a + Real(n)) * (c + Real(n)) / (Real(n + 1) * z);
        if (abs(nt) > abs(t)) return false;
        t = nt;
        s += t;
        if (abs(t) < eps * abs(s)) {
            out = pow(z, -a) * s;
            return true;
        }
    }
    return false;
}

}  // namespace


double airy_zero_asymptotic(long k) {
    if (k < 1) throw DomainError("airy zero index must be >= 1");
    double t = 3.0 * std::numbers::pi * (4.0 * k - 1.0) / 8.0;
    double u = 1.0 / (t * t);
    double s = 1 + u * (5.0 / 48 + u * (-5.0 / 36 + u * (77125.0 / 82944 + u * (-108056875.0 / 6967296))));
    return std::pow(t, 2.0 / 3.0) * s;
}

Real airy_zero(int k) {
    if (k < 1) throw DomainError("airy zero index must be >= 1");
    const unsigned bits = working_precision();
    {
        std::lock_guard<std::mutex> g(zero_mu);
        auto& v = zero_cache[bits];
        if (static_cast<int>(v.size()) >= k) return v[k - 1];
    }
    // compute outside the lock; another thread may race, both results agree
    std::vector<Real> fresh;
    size_t have;
    {
        std::lock_guard<std::mutex> g(zero_mu);
        have = zero_cache[bits].size();
    }
    for (int j = static_cast<int>(have) + 1; j <= k; ++j) fresh.push_back(refine_zero(j, bits));
    std::lock_guard<std::mutex> g(zero_mu);
    auto& v = zero_cache[bits];
    for (size_t i = v.size() - have; i < fresh.size(); ++i) v.push_back(fresh[i]);
    return v[k - 1];
}

std::vector<Real> airy_zeros(int K) {
    std::vector<Real> out;
    if (K < 1) return out;
    airy_zero(K);
    for (int k = 1; k <= K; ++k) out.push_back(airy_zero(k));
    return out;
}

Real hypergeometric_M(const Real& a, const Real& b, const Real& z) {
    if (b.is_integer() && b.sign() <= 0) throw PoleError("M(a,b,z) with b a non-positive integer");
    const unsigned prec = working_precision();
    double zd = std::fabs(z.to_double());
    unsigned guard = static_cast<unsigned>(zd * 1.4427) + 64;
    return m_series(a, b, z, prec + guard).with_prec(prec);
}

Real hypergeometric_U(const Real& a, const Real& b, const Real& z) {
    if (z.sign() <= 0) throw DomainError("U(a,b,z) needs z > 0");
    if (b.is_integer()) throw DomainError("U(a,b,z) with integer b is not supported");
    const unsigned prec = working_precision();
    const double zd = z.to_double();
    Real out;
    if (zd > (prec + 16) * 0.6931471805599453 && u_asymptotic(a, b, z, prec + 32, out)) return out.with_prec(prec);
    unsigned wp = prec + static_cast<unsigned>(zd * 1.4427) + 64;
    PrecisionScope ps(wp);
    Real A(a), B(b), Z(z);
    A.set_prec(wp);
    B.set_prec(wp);
    Z.set_prec(wp);
    Real one(1);
    Real c1 = gamma(one - B) * rgamma(A - B + one);
    Real c2 = gamma(B - one) * rgamma(A);
    Real r(0);
    if (!c1.is_zero()) r += c1 * m_series(A, B, Z, wp);
    if (!c2.is_zero()) r += c2 * pow(Z, one - B) * m_series(A - B + one, Real(2) - B, Z, wp);
    return r.with_prec(prec);
}

DensityValue airy_density_terms(const Real& x, int max_terms) {
    if (max_terms < 1) throw DomainError("airy_density needs at least one term");
    if (x.sign() <= 0) return {Real(0), 0};
    const unsigned target = working_precision();
    // f ~ exp(-6 x^2) while single terms stay O(1): about 8.7 x^2 bits cancel
    const double xd = x.to_double();
    unsigned wp = target + 32 + static_cast<unsigned>(std::min(8.66 * xd * xd, 1e6));
    for (int attempt = 0; attempt < 6; ++attempt) {
        PrecisionScope ps(wp);
        const Real a(Rat(-5, 6)), b(Rat(4, 3));
        Real X = x.with_prec(wp);
        Real x2 = X * X;
        Real sum(0), maxterm(0);
        Real eps = ldexp(Real(1), -static_cast<long>(wp));
        int used = 0;
        bool done = false;
        for (int k = 1; k <= max_terms; ++k) {
            Real ak = airy_zero(k);
            Real bk = Real(2) * ak * ak * ak / Real(27);
            Real z = bk / x2;
            Real term = exp(-z) * pow(bk, Real(Rat(2, 3))) * hypergeometric_U(a, b, z);
            sum += term;
            maxterm = max(maxterm, abs(term));
            used = k;
            if (z > Real(10) && abs(term) < eps * maxterm) {
                done = true;
                break;
            }
        }
        if (!done) throw ConvergenceError("airy_density needs more than " + std::to_string(max_terms) + " terms");
        Real val = Real(2) * sqrt(Real(6)) * sum / pow(X, Real(Rat(10, 3)));
        // bits lost to cancellation between terms
        double lost = 0;
        if (!sum.is_zero()) lost = std::max(0.0, std::log2((maxterm / abs(sum)).to_double()));
        else lost = wp;
        if (wp >= target + static_cast<unsigned>(lost) + 16) return {val.with_prec(target), used};
        wp = target + static_cast<unsigned>(lost) + 48;
    }
    throw ConvergenceError("airy_density lost all precision to cancellation");
}

Real airy_density(const Real& x, int max_terms) { return airy_density_terms(x, max_terms).value; }

double airy_density_d(double x) {
    PrecisionScope ps(64);
    return airy_density(Real(x)).to_double();
}

Real airy_laplace(const Real& lambda, int K) {
    if (lambda.sign() <= 0) throw DomainError("airy_laplace needs lambda > 0");
    const unsigned prec = working_precision();
    PrecisionScope ps(prec + 16);
    Real c = pow(lambda, Real(Rat(2, 3))) * pow(Real(2), Real(Rat(-1, 3)));
    Real sum(0);
    const int refined = std::min(K > 0 ? K : 100, 100);
    // relative cut near 1e-30 keeps small lambda affordable
    Real rel = ldexp(Real(1), -static_cast<long>(std::min(prec, 100u)));
    const long cap = K > 0 ? K : 50000000L;
    long k = 1;
    for (; k <= cap; ++k) {
        Real ak = k <= refined ? airy_zero(static_cast<int>(k)) : zero_asymptotic_real(k);
        Real t = exp(-ak * c);
        sum += t;
        if (K == 0 && t < rel * sum) break;
    }
    if (K == 0 && k > cap) throw ConvergenceError("airy_laplace did not converge");
    return (lambda * sqrt(Real(2) * pi()) * sum).with_prec(prec);
}

namespace {

// Gauss-Legendre panels on [0, kTableMax]; beyond it f < 1e-18
constexpr double kTableMax = 2.8;
constexpr int kPanels = 56;

struct AiryTable {
    double h;
    std::vector<double> nodes, weights, dens;   // interior nodes
    std::vector<double> edges, edge_dens, cdf;  // panel edges
};

const AiryTable& airy_table() {
    static const AiryTable t = [] {
        using GL = boost::math::quadrature::gauss<double, 10>;
        AiryTable a;
        a.h = kTableMax / kPanels;
        std::vector<double> un, uw;  // nodes on [-1, 1]
        for (size_t i = 0; i < GL::abscissa().size(); ++i) {
            double x = GL::abscissa()[i], w = GL::weights()[i];
            un.push_back(x);
            uw.push_back(w);
            if (x != 0) {
                un.push_back(-x);
                uw.push_back(w);
            }
        }
        a.cdf.push_back(0.0);
        for (int i = 0; i <= kPanels; ++i) {
            a.edges.push_back(i * a.h);
            a.edge_dens.push_back(airy_density_d(i * a.h));
        }
        for (int i = 0; i < kPanels; ++i) {
            double mid = (i + 0.5) * a.h, acc = 0;
            for (size_t j = 0; j < un.size(); ++j) {
                double x = mid + 0.5 * a.h * un[j], w = 0.5 * a.h * uw[j];
                double f = airy_density_d(x);
                a.nodes.push_back(x);
                a.weights.push_back(w);
                a.dens.push_back(f);
                acc += w * f;
            }
            a.cdf.push_back(a.cdf.back() + acc);
        }
        return a;
    }();
    return t;
}

}  // namespace

double airy_integrate(const std::function<double(double)>& g) {
    const auto& t = airy_table();
    double s = 0;
    for (size_t i = 0; i < t.nodes.size(); ++i) s += t.weights[i] * g(t.nodes[i]) * t.dens[i];
    return s;
}

std::vector<double> airy_quadrature_moments(int s_max) {
    if (s_max < 0) throw DomainError("s_max must be >= 0");
    std::vector<double> out;
    for (int s = 0; s <= s_max; ++s) out.push_back(airy_integrate([s](double x) { return std::pow(x, s); }));
    return out;
}

double airy_cdf(double x) {
    if (x <= 0) return 0;
    const auto& t = airy_table();
    if (x >= kTableMax) return std::min(1.0, t.cdf.back());
    size_t i = std::min(static_cast<size_t>(x / t.h), t.edges.size() - 2);
    // cubic Hermite with F' = f
    double u = (x - t.edges[i]) / t.h;
    double u2 = u * u, u3 = u2 * u;
    double v = (2 * u3 - 3 * u2 + 1) * t.cdf[i] + (u3 - 2 * u2 + u) * t.h * t.edge_dens[i] +
               (-2 * u3 + 3 * u2) * t.cdf[i + 1] + (u3 - u2) * t.h * t.edge_dens[i + 1];
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace pairy
