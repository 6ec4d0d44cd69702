#include "borelkit/pathgrid.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "borelkit/quadrature.hpp"

namespace borelkit {

cplx PathGrid::point(double lam) const {
    if (vertices.size() < 2) throw DomainError("PathGrid: empty path");
    lam = std::clamp(lam, 0.0, length());
    std::size_t j = 1;
    while (j + 1 < corner.size() && corner[j] < lam) ++j;
    double seg = corner[j] - corner[j - 1];
    double f = seg > 0.0 ? (lam - corner[j - 1]) / seg : 0.0;
    return vertices[j - 1] + f * (vertices[j] - vertices[j - 1]);
}

cplx PathGrid::tangent(double lam) const {
    std::size_t j = 1;
    while (j + 1 < corner.size() && corner[j] <= lam) ++j;
    cplx d = vertices[j] - vertices[j - 1];
    return d / std::abs(d);
}

std::size_t PathGrid::panel_of(double lam) const {
    if (lam <= breaks.front()) return 0;
    if (lam >= breaks.back()) return panels() - 1;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lam);
    return static_cast<std::size_t>(it - breaks.begin()) - 1;
}

double PathGrid::locate(cplx s, double tol) const {
    double best = INFINITY, best_lam = 0.0;
    for (std::size_t j = 1; j < vertices.size(); ++j) {
        cplx a = vertices[j - 1], d = vertices[j] - a;
        double len = std::abs(d);
        double f = std::clamp(((s - a) * std::conj(d)).real() / (len * len), 0.0, 1.0);
        double dist = std::abs(a + f * d - s);
        if (dist < best) {
            best = dist;
            best_lam = corner[j - 1] + f * len;
        }
    }
    if (best > tol * std::max(1.0, std::abs(s))) throw DomainError("PathGrid: point is not on the path");
    return best_lam;
}

double PathGrid::spacing() const {
    double h = 0.0;
    for (std::size_t p = 0; p < panels(); ++p) h = std::max(h, breaks[p + 1] - breaks[p]);
    return h / order;
}

PathGrid make_path_grid(const std::vector<cplx>& vertices, const PathGridOptions& opt) {
    if (vertices.size() < 2 || vertices[0] != cplx(0.0)) throw DomainError("make_path_grid: path must start at 0");
    if (opt.order < 2 || !(opt.h_max > 0.0) || !(opt.h_min > 0.0)) throw DomainError("make_path_grid: bad options");
    PathGrid g;
    g.vertices = vertices;
    g.order = opt.order;
    g.corner.push_back(0.0);
    for (std::size_t j = 1; j < vertices.size(); ++j) {
        double len = std::abs(vertices[j] - vertices[j - 1]);
        if (!(len > 0.0)) throw DomainError("make_path_grid: repeated vertex");
        g.corner.push_back(g.corner.back() + len);
    }
    g.breaks.push_back(0.0);
    for (std::size_t j = 1; j < g.corner.size(); ++j) {
        double lo = g.corner[j - 1], hi = g.corner[j];
        double x = lo;
        while (x < hi) {
            double h = opt.h_max;
            // Geometric grading toward 0 only.
            if (x < opt.h_max) h = std::max(opt.h_min, std::min(opt.h_max, x));
            double next = std::min(hi, x + h);
            if (hi - next < 1e-3 * h) next = hi;
            g.breaks.push_back(next);
            x = next;
        }
    }
    const GLRule& r = gauss_legendre(opt.order);
    for (std::size_t p = 0; p + 1 < g.breaks.size(); ++p) {
        double a = g.breaks[p], b = g.breaks[p + 1];
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < opt.order; ++i) {
            double lam = mid + half * r.x[static_cast<std::size_t>(i)];
            g.lambda.push_back(lam);
            g.nodes.push_back(g.point(lam));
            g.weights.push_back(half * r.w[static_cast<std::size_t>(i)]);
        }
    }
    return g;
}

PathGrid path_grid_Pk(cplx A_k, double halfline_length, const PathGridOptions& opt) {
    if (A_k == cplx(0.0) || !(halfline_length > 0.0)) throw DomainError("path_grid_Pk: bad A_k or length");
    return make_path_grid({0.0, A_k, A_k - halfline_length}, opt);
}

const std::vector<double>& gl_barycentric_weights(int order) {
    static std::mutex mutex;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    const GLRule& r = gauss_legendre(order);
    std::vector<double> w(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) {
        long double prod = 1.0L;
        for (int k = 0; k < order; ++k)
            if (k != j) prod *= static_cast<long double>(r.x[static_cast<std::size_t>(j)]) - r.x[static_cast<std::size_t>(k)];
        w[static_cast<std::size_t>(j)] = static_cast<double>(1.0L / prod);
    }
    // Normalise to avoid overflow for high orders; barycentric formula is scale invariant.
    double m = 0.0;
    for (double x : w) m = std::max(m, std::abs(x));
    for (double& x : w) x /= m;
    return cache.emplace(order, std::move(w)).first->second;
}

namespace {

// Values of v on panel p with a common exponent.
double panel_exponent(const GridFunction& v, std::size_t base, int order) {
    double e = -INFINITY;
    for (int i = 0; i < order; ++i) {
        Scaled s = v.at(base + static_cast<std::size_t>(i));
        if (!s.is_zero()) e = std::max(e, s.e + std::log(std::abs(s.m)));
    }
    return e;
}

cplx interp_panel(const PathGrid& g, const GridFunction& v, std::size_t p, double lam, double e) {
    const GLRule& r = gauss_legendre(g.order);
    const auto& bw = gl_barycentric_weights(g.order);
    double a = g.breaks[p], b = g.breaks[p + 1];
    double x = (2.0 * lam - a - b) / (b - a);
    std::size_t base = p * static_cast<std::size_t>(g.order);
    cplx num = 0.0;
    double den = 0.0;
    for (int i = 0; i < g.order; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        Scaled s = v.at(base + ii);
        cplx val = s.is_zero() ? cplx(0.0) : s.m * std::exp(s.e - e);
        double dx = x - r.x[ii];
        if (dx == 0.0) return val;
        double t = bw[ii] / dx;
        num += t * val;
        den += t;
    }
    return num / den;
}

}  // namespace

Scaled interpolate(const PathGrid& g, const GridFunction& v, double lam) {
    if (v.size() != g.nodes.size()) throw DomainError("interpolate: grid function does not match the path grid");
    if (lam < -1e-12 || lam > g.length() * (1.0 + 1e-12)) throw DomainError("interpolate: point outside the path grid");
    std::size_t p = g.panel_of(lam);
    double e = panel_exponent(v, p * static_cast<std::size_t>(g.order), g.order);
    if (!std::isfinite(e)) return {};
    return {interp_panel(g, v, p, lam, e), e};
}

Scaled integrate_along(const PathGrid& g, const GridFunction& v, double lam_end, const std::function<cplx(cplx)>& f) {
    if (v.size() != g.nodes.size()) throw DomainError("integrate_along: grid function does not match the path grid");
    if (lam_end < -1e-12 || lam_end > g.length() * (1.0 + 1e-12)) throw DomainError("integrate_along: end outside the path grid");
    const GLRule& r = gauss_legendre(g.order);
    Scaled total{};
    std::size_t last = g.panel_of(lam_end);
    for (std::size_t p = 0; p <= last; ++p) {
        std::size_t base = p * static_cast<std::size_t>(g.order);
        double e = panel_exponent(v, base, g.order);
        if (!std::isfinite(e)) continue;
        double a = g.breaks[p], b = g.breaks[p + 1];
        cplx acc = 0.0;
        if (p < last || lam_end >= b) {
            for (int i = 0; i < g.order; ++i) {
                std::size_t ii = base + static_cast<std::size_t>(i);
                Scaled s = v.at(ii);
                if (s.is_zero()) continue;
                acc += g.weights[ii] * g.tangent(g.lambda[ii]) * f(g.nodes[ii]) * s.m * std::exp(s.e - e);
            }
        } else {
            double half = 0.5 * (lam_end - a), mid = 0.5 * (lam_end + a);
            if (half <= 0.0) continue;
            for (int i = 0; i < g.order; ++i) {
                std::size_t ii = static_cast<std::size_t>(i);
                double lam = mid + half * r.x[ii];
                acc += half * r.w[ii] * g.tangent(lam) * f(g.point(lam)) * interp_panel(g, v, p, lam, e);
            }
        }
        total = total + Scaled{acc, e};
    }
    return total;
}

}  // namespace borelkit
