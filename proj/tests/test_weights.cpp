#include "doctest.h"

#include <cmath>

#include "borelkit/weights.hpp"

using namespace borelkit;

namespace {

// Direct summation with an integral tail bracket, used as an independent oracle.
double zeta_oracle(double b) {
    double sum = 0.0;
    const long N = 2000000;
    for (long n = N; n >= 1; --n) sum += std::pow(static_cast<double>(n), -b);
    double lo = std::pow(N + 1.0, 1.0 - b) / (b - 1.0);
    double hi = std::pow(static_cast<double>(N), 1.0 - b) / (b - 1.0);
    return sum + 0.5 * (lo + hi) - 0.5 * std::pow(static_cast<double>(N), -b);
}

double grid_max(const std::function<double(double)>& f, double x1) {
    // Coarse scan followed by golden section refinement around the best cell.
    const int n = 200000;
    double best = f(0.0), bx = 0.0;
    for (int i = 1; i <= n; ++i) {
        double x = x1 * i / n;
        double v = f(x);
        if (v > best) best = v, bx = x;
    }
    double lo = std::max(0.0, bx - x1 / n), hi = std::min(x1, bx + x1 / n);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
        double a = hi - g * (hi - lo), c = lo + g * (hi - lo);
        if (f(a) > f(c)) hi = c; else lo = a;
    }
    return std::max(best, f(0.5 * (lo + hi)));
}

}  // namespace

TEST_CASE("zeta matches Basel and oracle values") {
    CHECK(zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
    CHECK(zeta(3.0) == doctest::Approx(1.2020569031595942).epsilon(1e-13));
    CHECK(zeta(1.5) == doctest::Approx(2.6123753486854883).epsilon(1e-12));
    CHECK(zeta(3.0) == doctest::Approx(zeta_oracle(3.0)).epsilon(1e-11));
    CHECK(zeta(1.2) == doctest::Approx(5.591582441177750).epsilon(1e-11));
    CHECK_THROWS_AS(zeta(1.0), DomainError);
    CHECK_THROWS_AS(zeta(0.5), DomainError);
}

TEST_CASE("partial sums r_b and s_b") {
    WeightSeq w(2.0, 2.0);
    CHECK(w.r(0) == 1.0);
    CHECK(w.r(1) == 1.25);
    CHECK(w.s(1) == 0.75);
    WeightSeq d;
    CHECK(d.M() == doctest::Approx(zeta(2.0) + 1.0));
    CHECK_THROWS_AS(WeightSeq(2.0, 1.5), DomainError);
}

TEST_CASE("weight invariants") {
    for (double b : {1.2, 2.0, 3.0}) {
        WeightSeq w(b);
        double prev = 0.0;
        for (int beta = 0; beta <= 2000; ++beta) {
            double r = w.r(beta);
            CHECK(r > prev);
            CHECK(r < w.zeta_b());
            CHECK(w.s(beta) >= w.M() - w.zeta_b());
            prev = r;
        }
    }
}

TEST_CASE("sup_poly_exp closed form and grid oracle") {
    CHECK(sup_poly_exp(0, 5.0) == 1.0);
    CHECK(sup_poly_exp(2, 3.0) == doctest::Approx(4.0 / 9.0 * std::exp(-2.0)).epsilon(1e-15));
    CHECK(sup_poly_exp(2, 3.0) == doctest::Approx(0.060150).epsilon(1e-5));
    for (int m1 : {1, 3, 8}) {
        for (double m2 : {0.1, 1.0, 10.0}) {
            double oracle = grid_max([&](double x) { return std::pow(x, m1) * std::exp(-m2 * x); }, 4.0 * m1 / m2);
            CHECK(sup_poly_exp(m1, m2) == doctest::Approx(oracle).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(sup_poly_exp(1, 0.0), DomainError);
}

TEST_CASE("sup_linear_minus_exp") {
    CHECK(sup_linear_minus_exp(1.0, 1.0, 1.0) == -1.0);
    double e = std::exp(1.0);
    CHECK(sup_linear_minus_exp(1.0, 1.0, 2.0 * e) == doctest::Approx(2.0 * e * std::log(2.0)).epsilon(1e-14));
    double oracle = grid_max([](double x) { return 5.0 * x - std::exp(2.0 * x); }, 5.0);
    CHECK(sup_linear_minus_exp(1.0, 2.0, 5.0) == doctest::Approx(oracle).epsilon(1e-9));
}
