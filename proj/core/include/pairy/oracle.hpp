#pragma once

#include "pairy/costs.hpp"
#include "pairy/moments.hpp"
#include "pairy/real.hpp"
#include "pairy/series.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pairy {

constexpr int kExcursionEnumCap = 14;
constexpr int kBridgeEnumCap = 12;

using Steps = std::vector<std::int8_t>;

struct LatticePath {
    Steps steps;  // +1 / -1
    Ensemble ensemble;

    int semilength() const { return static_cast<int>(steps.size() / 2); }
    static LatticePath parse(const std::string& s, Ensemble e);  // e.g. "++--" or "+,-"
    std::string str() const;
};

// Throws MalformedPath if the steps do not form a path of the ensemble.
void validate(const LatticePath& path);

// one semi-length per matched pair; below-axis arcs of bridges are reflected
std::vector<int> slice_semilengths(const LatticePath& path);
// unchecked core used by the samplers
void slice_semilengths_into(const Steps& steps, std::vector<int>& out, std::vector<int>& stack);

Real statistic(const LatticePath& path, const CostFunction& cost, const Real& eps);
Rat statistic_exact(const LatticePath& path, const CostFunction& cost, const Rat& eps);

// Visits every excursion / bridge of semilength N once.
void for_each_path(int N, Ensemble e, const std::function<void(const Steps&)>& fn);
std::vector<LatticePath> enumerate_paths(int N, Ensemble e);

struct FiniteNTable {
    Ensemble ensemble;
    std::string cost_id;
    std::string eps_str;
    int s_max;
    int n_max;
    ScalarKind kind;
    // values[s][N] = M_s(N)
    std::vector<std::vector<Real>> values;
    std::optional<std::vector<std::vector<Rat>>> exact;

    const Real& at(int s, int N) const { return values[s][N]; }
};

// Moments of A - eps*N over all paths of semilength N <= n_max via the
// first-return decomposition. Rational mode needs a rational cost and eps.
FiniteNTable exact_moment_dp(Ensemble e, const CostFunction& cost, const Scalar& eps, int n_max, int s_max);
// Same recursion in double precision (benchmarks, quick looks).
std::vector<std::vector<double>> exact_moment_dp_double(Ensemble e, const std::vector<double>& w, int n_max,
                                                        int s_max);

// Brute force over enumerate_paths (exact). Returns M[s][N] for N <= n_max.
std::vector<std::vector<Rat>> brute_force_moments(Ensemble e, const CostFunction& cost, const Rat& eps, int n_max,
                                                  int s_max);

struct ConvergenceRow {
    int s;
    Real mbar;
    std::vector<int> ns;
    std::vector<Real> deviations;  // M_s(N)/N^(s(p+1/2)) - bar M_s
    double fitted_exponent;        // d_s ~ N^-exponent over the top decade
};
std::vector<ConvergenceRow> rescaled_convergence(const FiniteNTable& table, const Real& p);

// hooks of the plane tree attached to an excursion; MismatchError if the
// multiset {2h-1} differs from the slice lengths
std::vector<int> path_to_tree_hooks(const LatticePath& path);

void write_table_csv(std::ostream& os, const FiniteNTable& t, const Real& p);

}  // namespace pairy
