#pragma once

#include <vector>

namespace borelkit {

struct LstsqResult {
    std::vector<double> coef;
    std::vector<double> se;   ///< standard errors sigma sqrt(diag (X^T X)^-1)
    std::vector<double> fitted;
    double rss = 0.0;
    int rank = 0;
};

/// Least squares by Householder QR with column scaling. rows[i] is one observation.
LstsqResult lstsq(const std::vector<std::vector<double>>& rows, const std::vector<double>& y);

/// Neville extrapolation of the polynomial through (x_i, y_i) evaluated at x.
template <class T, class X>
T neville(const std::vector<X>& x, std::vector<T> y, X at) {
    const std::size_t n = y.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            y[i] = ((at - x[i + m]) * y[i] + (x[i] - at) * y[i + 1]) / (x[i] - x[i + m]);
    return y[0];
}

}  // namespace borelkit
