#include "borelkit/weights.hpp"

#include <cmath>

namespace borelkit {

double zeta(double b, double tol) {
    if (!(b > 1.0)) throw DomainError("zeta: b must exceed 1");
    if (!(tol > 0.0)) throw DomainError("zeta: tol must be positive");
    // Partial sum up to N-1 plus the Euler-Maclaurin tail from N.
    // The tail starts with the integral N^(1-b)/(b-1); the Bernoulli corrections
    // make the remainder negligible already for moderate N.
    static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    long N = 32;
    for (;;) {
        double sum = 0.0;
        for (long k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -b);
        double n = static_cast<double>(N);
        double tail = std::pow(n, 1.0 - b) / (b - 1.0) + 0.5 * std::pow(n, -b);
        double rising = b;  // b (b+1) ... (b+2j-2)
        double fact = 2.0;  // (2j)!
        double last = 0.0;
        for (int j = 1; j <= 7; ++j) {
            last = bern[j - 1] / fact * rising * std::pow(n, -b - 2 * j + 1);
            tail += last;
            rising *= (b + 2 * j - 1) * (b + 2 * j);
            fact *= (2 * j + 1) * (2 * j + 2);
        }
        if (std::abs(last) < tol || N > 4096) return sum + tail;
        N *= 2;
    }
}

WeightSeq::WeightSeq(double b, double M) : b_(b), M_(M) {
    if (!(b > 1.0)) throw DomainError("WeightSeq: b must exceed 1");
    zeta_ = zeta(b);
    if (M_ < 0.0) M_ = zeta_ + 1.0;
    if (!(M_ > zeta_)) throw DomainError("WeightSeq: M must exceed zeta(b)");
    cache_ = std::make_shared<Cache>();
    cache_->r.push_back(1.0);
}

double WeightSeq::r(int beta) const {
    if (beta < 0) throw DomainError("WeightSeq: beta must be nonnegative");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& r = cache_->r;
    while (static_cast<int>(r.size()) <= beta) {
        double n = static_cast<double>(r.size());
        r.push_back(r.back() + std::pow(n + 1.0, -b_));
    }
    return r[static_cast<std::size_t>(beta)];
}

double sup_poly_exp(int m1, double m2) {
    if (!(m2 > 0.0)) throw DomainError("sup_poly_exp: m2 must be positive");
    if (m1 < 0) throw DomainError("sup_poly_exp: m1 must be nonnegative");
    if (m1 == 0) return 1.0;
    double x = m1 / m2;
    return std::exp(m1 * std::log(x) - m1);
}

double sup_linear_minus_exp(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw DomainError("sup_linear_minus_exp: a, b, c must be positive");
    if (c > a * b) return (c / b) * (std::log(c / (a * b)) - 1.0);
    return -a;
}

}  // namespace borelkit
