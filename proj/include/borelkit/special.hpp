#pragma once

#include "borelkit/support.hpp"

namespace borelkit {

/// n! for n <= 170 exactly as a double (integer products).
double factorial(int n);

/// log(n!) for any n >= 0.
double log_factorial(int n);

/// Gamma(x) for real x > 0. Integer arguments use exact factorials; others Lanczos (g = 7, n = 9).
double gamma_fn(double x);

/// log Gamma(x) for real x > 0.
double log_gamma(double x);

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_fn(double a, double b);

/// Binomial coefficient C(n, k) as a double.
double binomial(int n, int k);

}  // namespace borelkit
