#pragma once

#include "pairy/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pairy {

enum class CostFamily { gamma_ratio, gamma_ratio_32, power_half, power_one, pure_power, log_shift };

std::string to_string(CostFamily f);
CostFamily cost_family_from_string(const std::string& s);

// A deformation family omega_p(k). Parameters are kept both as Real and,
// when they were given exactly, as Rat so integer-p cases can run in
// exact arithmetic.
class CostFunction {
public:
    // gamma_ratio:     Gamma(k+p+a)/Gamma(k+a), a > 0
    // gamma_ratio_32:  Gamma(k+p+a-3/2)Gamma(k+2)/(Gamma(k+a)Gamma(k+1/2))
    // power_half:      (k+1/2)^p
    // power_one:       (k+1)^p
    // pure_power:      k^p, 0 at k = 0
    // log_shift:       ln(k+1)
    static CostFunction gamma_ratio(const Rat& a, const Rat& p);
    static CostFunction gamma_ratio(const Real& a, const Real& p);
    static CostFunction gamma_ratio_32(const Rat& a, const Rat& p);
    static CostFunction gamma_ratio_32(const Real& a, const Real& p);
    static CostFunction power_half(const Rat& p);
    static CostFunction power_half(const Real& p);
    static CostFunction power_one(const Rat& p);
    static CostFunction power_one(const Real& p);
    static CostFunction pure_power(const Rat& p);
    static CostFunction pure_power(const Real& p);
    static CostFunction log_shift();

    CostFamily family() const { return family_; }
    const Real& p() const { return p_; }
    const Real& a() const { return a_; }
    const std::optional<Rat>& p_exact() const { return p_rat_; }
    const std::optional<Rat>& a_exact() const { return a_rat_; }
    bool has_a() const { return family_ == CostFamily::gamma_ratio || family_ == CostFamily::gamma_ratio_32; }

    // Same family at another exponent (a unchanged).
    CostFunction with_p(const Real& p) const;

    // correction exponent: omega(k)/k^p - 1 = O(k^-eta); +inf if exact
    Real eta() const;

    Real evaluate(long k) const;
    // exact value when omega(k) is rational for every k
    bool is_rational() const;
    Rat evaluate_exact(long k) const;

    // omega(0..n-1), using recurrences where available
    std::vector<Real> table(long n) const;
    std::vector<Rat> table_exact(long n) const;

    std::string id() const;

private:
    CostFunction(CostFamily f, Real p, Real a, std::optional<Rat> pr, std::optional<Rat> ar);
    void validate() const;

    CostFamily family_;
    Real p_;
    Real a_;
    std::optional<Rat> p_rat_;
    std::optional<Rat> a_rat_;
};

enum class AlphaMethod { closed_form, regularized_series };
std::string to_string(AlphaMethod m);

struct AlphaResult {
    Real value;
    AlphaMethod method;
    Real estimated_error;
};

// Closed forms exist for the two gamma-ratio families. Throws NoClosedForm
// for the others, PoleError at p = 1/2 or where the closed form is singular.
AlphaResult alpha_closed_form(const CostFunction& cf);

struct AlphaNumericOptions {
    long k0 = 64;         // first ladder point
    int max_levels = 13;  // ladder K = k0 * 2^i
    int min_levels = 5;
};

// Regular part at z = 1 of sum_N c_N omega(N) z^N from partial sums on a
// geometric ladder, with the known exponent structure eliminated.
AlphaResult alpha_numeric(const CostFunction& cf, const Real& tol, const AlphaNumericOptions& opt = {});

// closed form when available, numeric otherwise
AlphaResult alpha(const CostFunction& cf, const Real& tol);

}  // namespace pairy
