#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "borelkit/support.hpp"

namespace borelkit {

/// Sum_{n>=0} 1/(n+1)^b, partial sum plus integral tail bound.
double zeta(double b, double tol = 1e-12);

/// Partial sums r_b(beta) = sum_{n=0}^{beta} 1/(n+1)^b and s_b(beta) = M - r_b(beta).
/// Copies share one growable cache.
class WeightSeq {
public:
    WeightSeq(double b = 2.0, double M = -1.0);

    double b() const { return b_; }
    double M() const { return M_; }
    double zeta_b() const { return zeta_; }

    double r(int beta) const;
    double s(int beta) const { return M_ - r(beta); }

private:
    struct Cache {
        std::vector<double> r;
        std::mutex mutex;
    };

    double b_;
    double M_;
    double zeta_;
    std::shared_ptr<Cache> cache_;
};

/// sup_{x>=0} x^m1 exp(-m2 x) = (m1/m2)^m1 e^-m1, with 0^0 = 1.
double sup_poly_exp(int m1, double m2);

/// sup_{x>=0} c x - a exp(b x).
/// Returns (c/b)(log(c/(ab)) - 1) when c > ab, else the value -a at x = 0.
double sup_linear_minus_exp(double a, double b, double c);

}  // namespace borelkit
