#pragma once

#include "pairy/real.hpp"

#include <vector>

namespace pairy {

// Dense linear solve with partial pivoting. Throws ConvergenceError on a
// singular matrix.
std::vector<Real> solve_linear(std::vector<std::vector<Real>> a, std::vector<Real> b);

// Value at x = x0 of the interpolating polynomial through (xs, ys).
Real neville(const std::vector<Real>& xs, const std::vector<Real>& ys, const Real& x0);

// Least-squares fit of y against the given basis columns, modified
// Gram-Schmidt (no normal equations).
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y);

// slope of log|y| against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pairy
