#include "borelkit/linalg.hpp"

#include <cmath>

#include "borelkit/support.hpp"

namespace borelkit {

LstsqResult lstsq(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
    const std::size_t n = rows.size();
    if (n == 0 || y.size() != n) throw DomainError("lstsq: empty or mismatched data");
    const std::size_t p = rows[0].size();
    if (n < p) throw DomainError("lstsq: fewer observations than unknowns");
    std::vector<double> scale(p, 0.0);
    for (const auto& r : rows) {
        if (r.size() != p) throw DomainError("lstsq: ragged design matrix");
        for (std::size_t j = 0; j < p; ++j) scale[j] = std::max(scale[j], std::abs(r[j]));
    }
    for (double& s : scale)
        if (s == 0.0) s = 1.0;
    // Column-major copy of the scaled design matrix.
    std::vector<std::vector<double>> A(p, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) A[j][i] = rows[i][j] / scale[j];
    std::vector<double> b = y;
    std::vector<double> diagR(p);
    LstsqResult res;
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += A[k][i] * A[k][i];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NumericalError("lstsq: rank deficient design");
        double alpha = A[k][k] > 0 ? -norm : norm;
        std::vector<double> v(n, 0.0);
        for (std::size_t i = k; i < n; ++i) v[i] = A[k][i];
        v[k] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k; i < n; ++i) vv += v[i] * v[i];
        for (std::size_t j = k; j < p; ++j) {
            double d = 0.0;
            for (std::size_t i = k; i < n; ++i) d += v[i] * A[j][i];
            for (std::size_t i = k; i < n; ++i) A[j][i] -= 2.0 * d / vv * v[i];
        }
        double d = 0.0;
        for (std::size_t i = k; i < n; ++i) d += v[i] * b[i];
        for (std::size_t i = k; i < n; ++i) b[i] -= 2.0 * d / vv * v[i];
        diagR[k] = A[k][k];
    }
    double rmax = 0.0;
    for (double d : diagR) rmax = std::max(rmax, std::abs(d));
    for (double d : diagR)
        if (std::abs(d) > 1e-13 * rmax) ++res.rank;
    if (res.rank < static_cast<int>(p)) throw NumericalError("lstsq: rank deficient design");
    std::vector<double> c(p);
    for (std::size_t k = p; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < p; ++j) s -= A[j][k] * c[j];
        c[k] = s / A[k][k];
    }
    for (std::size_t i = p; i < n; ++i) res.rss += b[i] * b[i];
    // Rinv for the covariance (X^T X)^-1 = Rinv Rinv^T in scaled coordinates.
    std::vector<std::vector<double>> Rinv(p, std::vector<double>(p, 0.0));
    for (std::size_t col = 0; col < p; ++col) {
        for (std::size_t k = p; k-- > 0;) {
            double s = (k == col) ? 1.0 : 0.0;
            for (std::size_t j = k + 1; j < p; ++j) s -= A[j][k] * Rinv[j][col];
            Rinv[k][col] = s / A[k][k];
        }
    }
    double sigma2 = n > p ? res.rss / static_cast<double>(n - p) : 0.0;
    res.coef.resize(p);
    res.se.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        res.coef[j] = c[j] / scale[j];
        double v = 0.0;
        for (std::size_t k = 0; k < p; ++k) v += Rinv[j][k] * Rinv[j][k];
        res.se[j] = std::sqrt(sigma2 * v) / scale[j];
    }
    res.fitted.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) s += rows[i][j] * res.coef[j];
        res.fitted[i] = s;
    }
    return res;
}

}  // namespace borelkit
