#pragma once
// Special functions needed by the closed-form expressions: lower incomplete
// gamma, Gauss hypergeometric 2F1, and the modified Bessel function I0.
// Series iteration caps are hard errors, never silent truncation.

namespace wpr::numerics {

// gamma_lower(a, x) = integral_0^x t^(a-1) e^(-t) dt, a > 0, x >= 0.
// Power series for x < a+1, Legendre continued fraction for the upper tail
// otherwise. Throws std::domain_error on bad arguments, convergence_error if
// 200 iterations do not reach ~1e-16 relative accuracy.
double gamma_lower(double a, double x);

// Regularized P(a,x) = gamma_lower(a,x) / Gamma(a).
double gamma_lower_regularized(double a, double x);

// 2F1(a, b; c; x) by power series; valid for 0 <= x < 1 and c not a
// nonpositive integer. 500-term cap.
double gauss_2f1(double a, double b, double c, double x);

// I0(x) = sum_k (x/2)^(2k) / (k!)^2, x >= 0. 200-term cap.
double bessel_i0(double x);

} // namespace wpr::numerics
