#pragma once

#include "deltaspec/util.hpp"

namespace deltaspec::specfun {

struct SpecFunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

// Gamma function for real x, Lanczos approximation with reflection below 1/2.
// Throws PoleError exactly on the poles 0, -1, -2, ...
double gamma(double x);

// 1/Gamma(x). Entire: returns 0 at the poles of Gamma.
double gamma_reciprocal(double x);

// Digamma psi(x) = Gamma'(x)/Gamma(x). Asymptotic expansion after an upward
// shift to x >= 8; reflection for x < 0. Throws PoleError on 0, -1, -2, ...
double digamma(double x);

// Kummer confluent hypergeometric M(a, b, z) = 1 + (a/b) z/1! + ... by direct
// series with adaptive truncation (stop after 3 consecutive terms below
// 1e-16 of the partial sum; at most 10000 terms, else BudgetError).
double kummer_m(double a, double b, double z);

// Value plus a truncation-based absolute error estimate.
SpecFunResult kummer_m_est(double a, double b, double z);
SpecFunResult tricomi_u_b2_est(double a, double z);

// d/dz M(a, b, z) = (a/b) M(a+1, b+1, z)
double kummer_m_derivative(double a, double b, double z);

// Tricomi U(a, b, z) for integer b in {1, 2, 3}, z > 0, built from the
// logarithmic-case expansion (the b -> integer limit of the two-Kummer form).
// Nonpositive-integer a reduces to the terminating polynomial.
double tricomi_u_int(double a, int b, double z);

// U(a, 2, z) for z > 0; the case used by the Coulomb matching condition.
double tricomi_u_b2(double a, double z);

// d/dz U(a, b, z) = -a U(a+1, b+1, z)
double tricomi_u_int_derivative(double a, int b, double z);

// Parabolic cylinder function U(a, z): decaying solution of y'' = (z^2/4 + a) y,
// assembled from the even/odd Kummer solutions
//   y1 = e^{-z^2/4} M(a/2 + 1/4, 1/2, z^2/2)
//   y2 = z e^{-z^2/4} M(a/2 + 3/4, 3/2, z^2/2)
// as U = cos(pi(1/4 + a/2)) Y1 - sin(pi(1/4 + a/2)) Y2 with
// Yk = Gamma(...)/(sqrt(pi) 2^{a/2+1/4}) yk.
double pcf_u(double a, double z);

// The two Weber-equation basis solutions (exposed for eigencondition ratios).
double pcf_y1(double a, double z);
double pcf_y2(double a, double z);

// Pochhammer (x)_n = x (x+1) ... (x+n-1)
double pochhammer(double x, int n);

}  // namespace deltaspec::specfun
