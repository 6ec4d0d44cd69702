#include "borelkit/poly.hpp"

#include <algorithm>

namespace borelkit {

int poly_degree(const std::vector<cplx>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<std::size_t>(i)] != cplx(0.0)) return i;
    return -1;
}

cplx poly_eval(const std::vector<cplx>& p, cplx x) {
    cplx acc{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots, cplx lead) {
    std::vector<cplx> p{lead};
    for (cplx r : roots) {
        std::vector<cplx> q(p.size() + 1, cplx(0.0));
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= r * p[i];
        }
        p = std::move(q);
    }
    return p;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& p) {
    int n = poly_degree(p);
    if (n < 0) throw DomainError("poly_roots: zero polynomial");
    if (n == 0) return {};
    std::vector<cplx> a(p.begin(), p.begin() + n + 1);
    cplx lead = a[static_cast<std::size_t>(n)];
    for (auto& c : a) c /= lead;
    double bound = 1.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1.0 + std::abs(a[static_cast<std::size_t>(i)]));
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::polar(0.5 * bound, 2 * kPi * i / n + 0.4);
    for (int it = 0; it < 2000; ++it) {
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx num = poly_eval(a, z[static_cast<std::size_t>(i)]);
            cplx den{1.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            cplx step = num / den;
            z[static_cast<std::size_t>(i)] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15 * bound) break;
    }
    std::vector<cplx> d(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) d[static_cast<std::size_t>(i - 1)] = a[static_cast<std::size_t>(i)] * double(i);
    for (auto& r : z)
        for (int it = 0; it < 3; ++it) {
            cplx dv = poly_eval(d, r);
            if (dv == cplx(0.0)) break;
            r -= poly_eval(a, r) / dv;
        }
    std::sort(z.begin(), z.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    return z;
}

}  // namespace borelkit
