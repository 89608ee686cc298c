#pragma once

#include "pairy/real.hpp"

#include <functional>
#include <vector>

namespace pairy {

// Airy distribution of the Brownian excursion area. a_k are the magnitudes
// of the zeros of Ai (Ai(-a_k) = 0), b_k = 2 a_k^3 / 27.
constexpr int kAiryZeroCap = 400;

// asymptotic estimate of the k-th zero magnitude
double airy_zero_asymptotic(long k);
// refined k-th zero magnitude (k >= 1); cached per precision
Real airy_zero(int k);
std::vector<Real> airy_zeros(int K);

// Tricomi U(a,b,z) for z > 0: Kummer connection for moderate z, the
// asymptotic series for large z. b must not be an integer.
Real hypergeometric_U(const Real& a, const Real& b, const Real& z);
// Kummer M(a,b,z) by its power series
Real hypergeometric_M(const Real& a, const Real& b, const Real& z);

struct DensityValue {
    Real value;
    int terms;
};
// f_Ai(x) with adaptive number of zeros (max_terms caps it)
DensityValue airy_density_terms(const Real& x, int max_terms = kAiryZeroCap);
Real airy_density(const Real& x, int max_terms = kAiryZeroCap);
double airy_density_d(double x);

// Laplace transform E[exp(-lambda X)] = lambda sqrt(2 pi) sum_k exp(-a_k lambda^(2/3) 2^(-1/3))
// K = 0: refined zeros up to the cap, asymptotic zeros beyond until terms are negligible
Real airy_laplace(const Real& lambda, int K = 0);

// Shared Gauss-Legendre table of f_Ai on [0, 2.8] (56 panels x 10 nodes),
// built on first use. The mass beyond 2.8 is below 1e-18.
// int g(x) f_Ai(x) dx over the table
double airy_integrate(const std::function<double(double)>& g);
// int x^s f_Ai for s = 0..s_max
std::vector<double> airy_quadrature_moments(int s_max);
// CDF of the area-Airy law, Hermite interpolation between panel edges
double airy_cdf(double x);

}  // namespace pairy
