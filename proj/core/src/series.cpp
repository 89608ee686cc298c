#include "pairy/series.hpp"

#include "pairy/errors.hpp"

#include <type_traits>

namespace pairy {

TruncSeries::TruncSeries(ScalarKind kind, int order) {
    if (order < 0) throw OrderMismatch("series order must be >= 0");
    if (kind == ScalarKind::rational) coeffs_ = std::vector<Rat>(static_cast<size_t>(order) + 1, Rat(0));
    else coeffs_ = std::vector<Real>(static_cast<size_t>(order) + 1, Real(0));
}

TruncSeries::TruncSeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if (rat().empty()) throw OrderMismatch("series needs at least one coefficient");
}

TruncSeries::TruncSeries(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    if (real().empty()) throw OrderMismatch("series needs at least one coefficient");
}

TruncSeries TruncSeries::one(ScalarKind kind, int order) {
    TruncSeries s(kind, order);
    if (kind == ScalarKind::rational) s.rat()[0] = 1;
    else s.real()[0] = Real(1);
    return s;
}

int TruncSeries::order() const {
    return std::visit([](const auto& v) { return static_cast<int>(v.size()) - 1; }, coeffs_);
}

const std::vector<Rat>& TruncSeries::rat() const {
    if (kind() != ScalarKind::rational) throw KindMismatch("series is not rational");
    return std::get<0>(coeffs_);
}
const std::vector<Real>& TruncSeries::real() const {
    if (kind() != ScalarKind::real) throw KindMismatch("series is not real");
    return std::get<1>(coeffs_);
}
std::vector<Rat>& TruncSeries::rat() {
    if (kind() != ScalarKind::rational) throw KindMismatch("series is not rational");
    return std::get<0>(coeffs_);
}
std::vector<Real>& TruncSeries::real() {
    if (kind() != ScalarKind::real) throw KindMismatch("series is not real");
    return std::get<1>(coeffs_);
}

Real TruncSeries::coeff(int n) const {
    if (kind() == ScalarKind::rational) return Real(rat().at(static_cast<size_t>(n)));
    return real().at(static_cast<size_t>(n));
}

TruncSeries TruncSeries::truncate(int order) const {
    if (order > this->order()) throw OrderMismatch("cannot truncate to a higher order");
    if (kind() == ScalarKind::rational)
        return TruncSeries(std::vector<Rat>(rat().begin(), rat().begin() + order + 1));
    return TruncSeries(std::vector<Real>(real().begin(), real().begin() + order + 1));
}

TruncSeries TruncSeries::shift_down() const {
    if (!coeff(0).is_zero()) throw DomainError("division by z needs a zero constant term");
    if (kind() == ScalarKind::rational) {
        std::vector<Rat> c(rat().begin() + 1, rat().end());
        c.emplace_back(0);
        return TruncSeries(std::move(c));
    }
    std::vector<Real> c(real().begin() + 1, real().end());
    c.emplace_back(0);
    return TruncSeries(std::move(c));
}

namespace {

void check_same(const TruncSeries& f, const TruncSeries& g) {
    if (f.kind() != g.kind()) throw KindMismatch("series scalar kinds differ");
    if (f.order() != g.order()) throw OrderMismatch("series orders differ");
}

template <class Op>
TruncSeries zip(const TruncSeries& f, const TruncSeries& g, Op op) {
    check_same(f, g);
    if (f.kind() == ScalarKind::rational) {
        std::vector<Rat> c(f.rat().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = op(f.rat()[i], g.rat()[i]);
        return TruncSeries(std::move(c));
    }
    std::vector<Real> c(f.real().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = op(f.real()[i], g.real()[i]);
    return TruncSeries(std::move(c));
}

}  // namespace

TruncSeries add(const TruncSeries& f, const TruncSeries& g) {
    return zip(f, g, [](const auto& a, const auto& b) -> std::decay_t<decltype(a)> { return a + b; });
}

TruncSeries sub(const TruncSeries& f, const TruncSeries& g) {
    return zip(f, g, [](const auto& a, const auto& b) -> std::decay_t<decltype(a)> { return a - b; });
}

TruncSeries hadamard(const TruncSeries& f, const TruncSeries& g) {
    if (f.order() != g.order()) throw OrderMismatch("series orders differ");
    if (f.kind() != g.kind()) throw KindMismatch("series scalar kinds differ");
    return zip(f, g, [](const auto& a, const auto& b) -> std::decay_t<decltype(a)> { return a * b; });
}

TruncSeries mul(const TruncSeries& f, const TruncSeries& g) {
    check_same(f, g);
    const int m = f.order();
    if (f.kind() == ScalarKind::rational) {
        std::vector<Rat> c(static_cast<size_t>(m) + 1, Rat(0));
        const auto& a = f.rat();
        const auto& b = g.rat();
        for (int i = 0; i <= m; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j <= m; ++j) c[i + j] += a[i] * b[j];
        }
        return TruncSeries(std::move(c));
    }
    std::vector<Real> c(static_cast<size_t>(m) + 1, Real(0));
    const auto& a = f.real();
    const auto& b = g.real();
    for (int n = 0; n <= m; ++n)
        for (int i = 0; i <= n; ++i) mul_add(c[n], a[i], b[n - i]);
    return TruncSeries(std::move(c));
}

TruncSeries scale(const TruncSeries& f, const Scalar& c) {
    if (f.kind() == ScalarKind::rational) {
        if (c.index() != 0) throw KindMismatch("cannot scale a rational series by a Real");
        std::vector<Rat> out = f.rat();
        for (auto& v : out) v *= std::get<0>(c);
        return TruncSeries(std::move(out));
    }
    Real cr = c.index() == 0 ? Real(std::get<0>(c)) : std::get<1>(c);
    std::vector<Real> out = f.real();
    for (auto& v : out) v *= cr;
    return TruncSeries(std::move(out));
}

TruncSeries apply_L(const CostFunction& omega, const Scalar& eps, int k, const TruncSeries& f) {
    if (k < 1) throw DomainError("apply_L needs k >= 1");
    const int m = f.order();
    if (f.kind() == ScalarKind::rational) {
        if (eps.index() != 0) throw KindMismatch("rational series needs a rational eps");
        auto w = omega.table_exact(m + 1);
        std::vector<Rat> out = f.rat();
        for (int n = 0; n <= m; ++n) {
            Rat d = w[n] - std::get<0>(eps);
            Rat pk(1);
            for (int i = 0; i < k; ++i) pk *= d;
            out[n] *= pk;
        }
        return TruncSeries(std::move(out));
    }
    Real e = eps.index() == 0 ? Real(std::get<0>(eps)) : std::get<1>(eps);
    auto w = omega.table(m + 1);
    std::vector<Real> out = f.real();
    for (int n = 0; n <= m; ++n) out[n] *= pow(w[n] - e, static_cast<long>(k));
    return TruncSeries(std::move(out));
}

TruncSeries binomial_series(const Rat& alpha, int order) {
    if (alpha <= 0 && alpha.get_den() == 1) throw PoleError("binomial_series: alpha is a non-positive integer");
    std::vector<Rat> c(static_cast<size_t>(order) + 1);
    c[0] = 1;
    for (int n = 0; n < order; ++n) c[n + 1] = c[n] * (Rat(n) + alpha) / Rat(n + 1);
    return TruncSeries(std::move(c));
}

TruncSeries binomial_series(const Real& alpha, int order) {
    if (alpha.sign() <= 0 && alpha.is_integer())
        throw PoleError("binomial_series: alpha is a non-positive integer");
    std::vector<Real> c(static_cast<size_t>(order) + 1);
    c[0] = Real(1);
    for (int n = 0; n < order; ++n) c[n + 1] = c[n] * (Real(n) + alpha) / Real(n + 1);
    return TruncSeries(std::move(c));
}

TruncSeries sqrt_one_minus_z(int order) {
    // (1-z)^(1/2): ratio (n - 1/2)/(n+1)
    std::vector<Rat> c(static_cast<size_t>(order) + 1);
    c[0] = 1;
    for (int n = 0; n < order; ++n) c[n + 1] = c[n] * (Rat(n) - Rat(1, 2)) / Rat(n + 1);
    return TruncSeries(std::move(c));
}

TruncSeries inv_sqrt_one_minus_z(int order) { return binomial_series(Rat(1, 2), order); }

TruncSeries geometric_series(ScalarKind kind, int order) {
    TruncSeries s(kind, order);
    if (kind == ScalarKind::rational)
        for (auto& v : s.rat()) v = 1;
    else
        for (auto& v : s.real()) v = Real(1);
    return s;
}

TruncSeries excursion_e0(int order) {
    auto s = sqrt_one_minus_z(order + 1);
    auto& c = s.rat();
    c[0] -= 1;
    for (auto& v : c) v = -v;
    return s.shift_down().truncate(order);
}

}  // namespace pairy
