#include "borelkit/special.hpp"

#include <array>
#include <cmath>

namespace borelkit {

namespace {

const std::array<double, 171>& factorial_table() {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
    // Valid for x >= 0.5.
    x -= 1.0;
    double a = kLanczos[0];
    double t = x + kLanczosG + 0.5;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

bool is_small_integer(double x) { return x == std::floor(x) && x >= 1.0 && x <= 171.0; }

}  // namespace

double factorial(int n) {
    if (n < 0) throw DomainError("factorial: negative argument");
    if (n > 170) return INFINITY;
    return factorial_table()[static_cast<std::size_t>(n)];
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    if (n <= 170) return std::log(factorial_table()[static_cast<std::size_t>(n)]);
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (is_small_integer(x)) return log_factorial(static_cast<int>(x) - 1);
    if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
    return lanczos_log_gamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    if (is_small_integer(x)) return factorial(static_cast<int>(x) - 1);
    return std::exp(log_gamma(x));
}

double beta_fn(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_fn: arguments must be positive");
    if (is_small_integer(a) && is_small_integer(b) && a + b <= 171.0)
        return factorial(static_cast<int>(a) - 1) * factorial(static_cast<int>(b) - 1) /
               factorial(static_cast<int>(a + b) - 1);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 170) return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

}  // namespace borelkit
