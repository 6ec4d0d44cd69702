#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace borelkit {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr const char* kVersion = "0.3.0";

/// Raised on precondition violations (bad parameters, points outside a domain).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when a numerical procedure cannot produce a trustworthy value.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A complex number stored as m * exp(e) with real e.
/// Used wherever super-exponential weights would overflow a double.
struct Scaled {
    cplx m{0.0, 0.0};
    double e = 0.0;

    static Scaled from(cplx v) { return {v, 0.0}; }
    bool is_zero() const { return m == cplx(0.0, 0.0); }
    double log_abs() const { return is_zero() ? -INFINITY : std::log(std::abs(m)) + e; }
    cplx value() const { return is_zero() ? cplx(0.0, 0.0) : m * std::exp(e); }
    /// Shift the exponent so that |m| is near one.
    Scaled normalized() const {
        if (is_zero() || !std::isfinite(std::abs(m))) return *this;
        double l = std::log(std::abs(m));
        return {m / std::abs(m), e + l};
    }
};

inline Scaled operator*(const Scaled& a, const Scaled& b) { return {a.m * b.m, a.e + b.e}; }
inline Scaled operator*(const Scaled& a, cplx c) { return {a.m * c, a.e}; }

inline Scaled operator+(const Scaled& a, const Scaled& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.e >= b.e) return {a.m + b.m * std::exp(b.e - a.e), a.e};
    return {b.m + a.m * std::exp(a.e - b.e), b.e};
}

inline Scaled operator-(const Scaled& a, const Scaled& b) { return a + Scaled{-b.m, b.e}; }

/// Borel-plane function evaluated pointwise.
using BorelFn = std::function<Scaled(cplx)>;

inline double principal_arg(cplx z) { return std::arg(z); }

/// Number of workers used when a caller passes 0.
inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

/// Runs fn(i) for i in [0, n) over a fixed pool of workers.
/// Each index is written by exactly one worker so results are order independent.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace borelkit
