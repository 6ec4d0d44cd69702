#pragma once

#include <vector>

#include "borelkit/support.hpp"

namespace borelkit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GLRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached rule of order n (n >= 1).
const GLRule& gauss_legendre(int n);

/// Quadrature result in scaled form: value = m exp(e), error estimate = err exp(e).
struct QuadResult {
    cplx m{0.0, 0.0};
    double e = 0.0;
    double err = 0.0;
    int panels = 0;

    Scaled scaled() const { return {m, e}; }
    cplx value() const { return m * std::exp(e); }
    double error() const { return err * std::exp(e); }
};

QuadResult operator+(const QuadResult& a, const QuadResult& b);
QuadResult operator-(const QuadResult& a, const QuadResult& b);

struct QuadOptions {
    double tol = 1e-13;      ///< relative to (peak integrand) x (interval length)
    int initial_panels = 16;
    int max_panels = 200000;
    int max_depth = 48;
    /// Panels are also accepted once the error estimate falls below noise * integral of |f| over
    /// the panel, the level at which the integrand's own rounding error dominates.
    double noise = 1e-14;
};

/// Adaptive composite Gauss-Legendre (order 32 with embedded order-16 comparison)
/// of a scaled real-parameter integrand over [a, b].
QuadResult integrate_scaled(const std::function<Scaled(double)>& f, double a, double b,
                            const QuadOptions& opt = {});

/// Same for a plain complex integrand.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, const QuadOptions& opt = {});

/// Fixed rule of order n on [a, b] split into `panels` equal pieces.
cplx integrate_fixed(const std::function<cplx(double)>& f, double a, double b, int n, int panels = 1);

}  // namespace borelkit
