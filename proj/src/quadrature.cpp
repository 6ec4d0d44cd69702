#include "borelkit/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace borelkit {

namespace {

GLRule build_rule(int n) {
    GLRule r;
    r.x.resize(static_cast<std::size_t>(n));
    r.w.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long double x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0L;
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(static_cast<double>(dx)) < 1e-19) break;
        }
        long double p0 = 1.0L, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0L;
        dp = n * (x * p1 - p0) / (x * x - 1.0L);
        r.x[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(x);
        r.w[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    }
    return r;
}

struct Panel {
    double a, b;
    int depth;
};

}  // namespace

const GLRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: order must be positive");
    static std::mutex mutex;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

QuadResult operator+(const QuadResult& a, const QuadResult& b) {
    if (a.m == cplx(0.0) && a.err == 0.0) return b;
    if (b.m == cplx(0.0) && b.err == 0.0) return a;
    QuadResult r;
    r.panels = a.panels + b.panels;
    if (a.e >= b.e) {
        double s = std::exp(b.e - a.e);
        r.m = a.m + b.m * s;
        r.err = a.err + b.err * s;
        r.e = a.e;
    } else {
        double s = std::exp(a.e - b.e);
        r.m = b.m + a.m * s;
        r.err = b.err + a.err * s;
        r.e = b.e;
    }
    return r;
}

QuadResult operator-(const QuadResult& a, const QuadResult& b) {
    QuadResult nb = b;
    nb.m = -nb.m;
    return a + nb;
}

QuadResult integrate_scaled(const std::function<Scaled(double)>& f, double a, double b, const QuadOptions& opt) {
    QuadResult out;
    if (a == b) return out;
    const GLRule& g32 = gauss_legendre(32);
    const GLRule& g16 = gauss_legendre(16);
    const int np = std::max(1, opt.initial_panels);
    const double len = b - a;

    // Reference exponent from a coarse sample.
    double eref = -INFINITY;
    for (int p = 0; p < np; ++p) {
        double pa = a + len * p / np, pb = a + len * (p + 1) / np;
        for (double x : g16.x) {
            Scaled s = f(0.5 * (pa + pb) + 0.5 * (pb - pa) * x);
            double l = s.log_abs();
            if (std::isnan(l)) throw NumericalError("integrate_scaled: integrand is NaN");
            eref = std::max(eref, l);
        }
    }
    if (eref == -INFINITY) return out;

    for (int attempt = 0; attempt < 4; ++attempt) {
        bool restart = false;
        double peak = 1.0;
        auto g = [&](double x) -> cplx {
            Scaled s = f(x);
            if (s.is_zero()) return {0.0, 0.0};
            double shift = s.e - eref;
            cplx v = s.m * std::exp(shift);
            double av = std::abs(v);
            if (!std::isfinite(av) || av > 1e200) {
                restart = true;
                eref = std::max(eref, s.log_abs());
                return {0.0, 0.0};
            }
            peak = std::max(peak, av);
            return v;
        };
        std::vector<Panel> stack;
        for (int p = np - 1; p >= 0; --p) stack.push_back({a + len * p / np, a + len * (p + 1) / np, 0});
        cplx total{0.0, 0.0};
        double err = 0.0;
        int panels = 0;
        while (!stack.empty() && !restart) {
            Panel pn = stack.back();
            stack.pop_back();
            double c = 0.5 * (pn.a + pn.b), h = 0.5 * (pn.b - pn.a);
            cplx i32{0.0, 0.0}, i16{0.0, 0.0};
            double a32 = 0.0;
            for (std::size_t k = 0; k < g32.x.size(); ++k) {
                cplx v = g(c + h * g32.x[k]);
                i32 += g32.w[k] * v;
                a32 += g32.w[k] * std::abs(v);
            }
            for (std::size_t k = 0; k < g16.x.size(); ++k) i16 += g16.w[k] * g(c + h * g16.x[k]);
            i32 *= h;
            i16 *= h;
            double e = std::abs(i32 - i16);
            double allowed = std::max(opt.tol * peak * std::abs(pn.b - pn.a), opt.noise * a32 * std::abs(h));
            if (e <= allowed || pn.depth >= opt.max_depth || panels + static_cast<int>(stack.size()) >= opt.max_panels) {
                total += i32;
                err += e;
                ++panels;
            } else {
                stack.push_back({c, pn.b, pn.depth + 1});
                stack.push_back({pn.a, c, pn.depth + 1});
            }
        }
        if (restart) continue;
        out.m = total;
        out.e = eref;
        out.err = err;
        out.panels = panels;
        return out;
    }
    throw NumericalError("integrate_scaled: could not stabilise the reference scale");
}

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, const QuadOptions& opt) {
    return integrate_scaled([&](double x) { return Scaled::from(f(x)); }, a, b, opt);
}

cplx integrate_fixed(const std::function<cplx(double)>& f, double a, double b, int n, int panels) {
    const GLRule& g = gauss_legendre(n);
    cplx total{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        double pa = a + (b - a) * p / panels, pb = a + (b - a) * (p + 1) / panels;
        double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
        cplx s{0.0, 0.0};
        for (std::size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * f(c + h * g.x[k]);
        total += h * s;
    }
    return total;
}

}  // namespace borelkit
