#pragma once

#include "pairy/costs.hpp"
#include "pairy/real.hpp"

#include <variant>
#include <vector>

namespace pairy {

enum class ScalarKind { rational, real };

using Scalar = std::variant<Rat, Real>;

// Truncated power series sum_{N<=M} f_N z^N with one scalar kind.
class TruncSeries {
public:
    TruncSeries(ScalarKind kind, int order);
    explicit TruncSeries(std::vector<Rat> coeffs);
    explicit TruncSeries(std::vector<Real> coeffs);

    static TruncSeries zero(ScalarKind kind, int order) { return TruncSeries(kind, order); }
    static TruncSeries one(ScalarKind kind, int order);

    ScalarKind kind() const { return coeffs_.index() == 0 ? ScalarKind::rational : ScalarKind::real; }
    int order() const;

    const std::vector<Rat>& rat() const;
    const std::vector<Real>& real() const;
    std::vector<Rat>& rat();
    std::vector<Real>& real();

    // coefficient as Real regardless of kind
    Real coeff(int n) const;
    // truncated copy at a lower order
    TruncSeries truncate(int order) const;
    // f(z)/z; needs f_0 == 0
    TruncSeries shift_down() const;

private:
    std::variant<std::vector<Rat>, std::vector<Real>> coeffs_;
};

TruncSeries add(const TruncSeries& f, const TruncSeries& g);
TruncSeries sub(const TruncSeries& f, const TruncSeries& g);
TruncSeries mul(const TruncSeries& f, const TruncSeries& g);
TruncSeries scale(const TruncSeries& f, const Scalar& c);
TruncSeries hadamard(const TruncSeries& f, const TruncSeries& g);

// Coefficient N -> f_N (omega(N) - eps)^k. Rational series need a
// rational cost and a rational eps.
TruncSeries apply_L(const CostFunction& omega, const Scalar& eps, int k, const TruncSeries& f);

// sqrt(1-z), 1/sqrt(1-z) (exact) and (1-z)^(-alpha) (Real)
TruncSeries sqrt_one_minus_z(int order);
TruncSeries inv_sqrt_one_minus_z(int order);
TruncSeries binomial_series(const Real& alpha, int order);
TruncSeries binomial_series(const Rat& alpha, int order);

// 1/(1-z)
TruncSeries geometric_series(ScalarKind kind, int order);

// E_0(z) = (1 - sqrt(1-z))/z
TruncSeries excursion_e0(int order);

}  // namespace pairy
