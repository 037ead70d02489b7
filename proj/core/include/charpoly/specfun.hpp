#pragma once

#include <complex>

namespace charpoly {

// ln Gamma(x), x > 0.
double log_gamma(double x);

// ln G(x) for the Barnes G-function, x > 0.
double log_barnes_g(double x);

// ln n! for integer n >= 0.
double log_factorial(int n);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// Logarithms of P(a,x) and Q(a,x), accurate when the value underflows.
double log_reg_lower_gamma(double a, double x);
double log_reg_upper_gamma(double a, double x);

// Regularized incomplete beta I_x(a,b).
double reg_inc_beta(double a, double b, double x);
double log_reg_inc_beta(double a, double b, double x);

double erfc(double x);
std::complex<double> erfc(std::complex<double> z);

}  // namespace charpoly
