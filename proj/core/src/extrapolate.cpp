#include "pairy/extrapolate.hpp"

#include "pairy/errors.hpp"

#include <cmath>
#include <utility>

namespace pairy {

std::vector<Real> solve_linear(std::vector<std::vector<Real>> a, std::vector<Real> b) {
    const size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        if (a[piv][c].is_zero()) throw ConvergenceError("singular linear system");
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (size_t r = c + 1; r < n; ++r) {
            Real f = a[r][c] / a[c][c];
            if (f.is_zero()) continue;
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Real> x(n);
    for (size_t i = n; i-- > 0;) {
        Real s = b[i];
        for (size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

Real neville(const std::vector<Real>& xs, const std::vector<Real>& ys, const Real& x0) {
    std::vector<Real> p = ys;
    const size_t n = xs.size();
    for (size_t m = 1; m < n; ++m)
        for (size_t i = 0; i + m < n; ++i)
            p[i] = ((x0 - xs[i + m]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + m]);
    return p[0];
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y) {
    const size_t m = cols.size();
    const size_t n = y.size();
    std::vector<std::vector<double>> q = cols;
    std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
    for (size_t j = 0; j < m; ++j) {
        for (size_t i = 0; i < j; ++i) {
            double d = 0;
            for (size_t k = 0; k < n; ++k) d += q[i][k] * q[j][k];
            r[i][j] = d;
            for (size_t k = 0; k < n; ++k) q[j][k] -= d * q[i][k];
        }
        double nrm = 0;
        for (double v : q[j]) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm == 0) throw ConvergenceError("rank-deficient fit");
        r[j][j] = nrm;
        for (double& v : q[j]) v /= nrm;
    }
    std::vector<double> qty(m, 0.0);
    for (size_t j = 0; j < m; ++j)
        for (size_t k = 0; k < n; ++k) qty[j] += q[j][k] * y[k];
    std::vector<double> x(m, 0.0);
    for (size_t i = m; i-- > 0;) {
        double s = qty[i];
        for (size_t k = i + 1; k < m; ++k) s -= r[i][k] * x[k];
        x[i] = s / r[i][i];
    }
    return x;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> one(x.size(), 1.0), lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(std::fabs(y[i]));
    }
    return least_squares({one, lx}, ly)[1];
}

}  // namespace pairy
