#pragma once

#include "pairy/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pairy {

enum class Ensemble { excursion, bridge };
std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string& s);

// mu^(E)_s(p), s = 0..s_max. HalfPointError at p = 1/2.
std::vector<Real> mu_excursion(const Real& p, int s_max);
std::vector<Real> mu_bridge(const Real& p, int s_max);
// exact versions for integer p >= 1
std::vector<Rat> mu_excursion_exact(long p, int s_max);
std::vector<Rat> mu_bridge_exact(long p, int s_max);

// bar M_s for s = 0..s_max
std::vector<Real> rescaled_moments(Ensemble e, const Real& p, int s_max);
// t(p) = Gamma(p-1/2)/(2 Gamma(p))
Real canonical_shift(const Real& p);
// <(x-t)^s> = sum_j binom(s,j) (-t)^(s-j) M_j, plain transform
std::vector<Real> binomial_transform(const std::vector<Real>& m, const Real& t);
// shifted moments with automatic precision escalation against cancellation
std::vector<Real> shifted_moments(Ensemble e, const Real& p, int s_max, const Real& t);

struct MomentTable {
    Ensemble ensemble;
    Real p;
    int s_max;
    std::vector<Real> mu;
    std::optional<std::vector<Rat>> mu_exact;  // integer p
    std::vector<Real> rescaled;
    Real shift_t;
    std::vector<Real> shifted;
};

MomentTable moment_table(Ensemble e, const Real& p, int s_max, const std::optional<Rat>& p_exact = std::nullopt);

// Takacs K_s, exact
std::vector<Rat> takacs_K(int s_max);
// area-Airy moments M^Ai_s
Real airy_moment(int s);
std::vector<Real> airy_moments(int s_max);

struct BoundConstants {
    Real f_p;
    Real A_p;
    Real R_p;
};
BoundConstants bound_constants(const Real& p);

struct BoundRow {
    int s;
    Real mu_e_abs;
    Real bound_e;
    Real margin_e;  // bound / |mu|, +inf when mu = 0
    Real mu_b_abs;
    Real bound_b;
    Real margin_b;
};
struct BoundReport {
    Real p;
    BoundConstants constants;
    bool conditions_hold;
    std::vector<BoundRow> rows;
    Real min_margin;
    std::vector<std::string> failures;  // "E@s=3", "B@s=1", ...
};
BoundReport bound_report(const Real& p, int s_max);
// Same, but throws BoundViolation when a bound fails.
BoundReport verify_bounds(const Real& p, int s_max);

struct CarlemanFit {
    double coeff_slogs;  // fitted coefficient of s log s
    double coeff_s;
    double max_residual;
};
// Least-squares fit of log|bar M_s| = a s log s + b s + c log s + d over s_lo..s_hi
CarlemanFit carleman_fit(const Real& p, int s_lo, int s_hi);

struct LimitHalfRow {
    int s;
    Real value;
    Real error;
    std::vector<Real> levels;  // successive extrapolations, coarse to fine
};
// (2 sqrt(pi))^s <(x_{1/2+d} - t)^s> extrapolated to d -> 0 over +-deltas.
std::vector<LimitHalfRow> limit_half_moments(int s_max, const std::vector<Real>& deltas = {});

// Log-cost case
std::vector<Real> tau_log(int s_max);
// tau_s / gamma_E^(s/2) as exact rationals (zero for odd s), from the
// closed form or from the convolution recursion
std::vector<Rat> tau_log_coeffs_closed(int s_max);
std::vector<Rat> tau_log_coeffs_recursion(int s_max);
std::vector<Real> gaussian_log_moments(int s_max);

}  // namespace pairy
