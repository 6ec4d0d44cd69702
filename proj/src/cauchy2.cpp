#include "borelkit/cauchy2.hpp"

#include <string>

#include "borelkit/special.hpp"

namespace borelkit {

namespace {

using IPoly = std::vector<std::int64_t>;  // ascending coefficients in m

IPoly mul_linear(const IPoly& p, std::int64_t c) {  // p(m) * (m + c)
    IPoly r(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + 1] += p[i];
        r[i] += c * p[i];
    }
    return r;
}

IPoly rising_poly(int p) {
    IPoly r{1};
    for (int j = 0; j < p; ++j) r = mul_linear(r, j);
    return r;
}

IPoly falling_poly(int p) {
    IPoly r{1};
    for (int j = 0; j < p; ++j) r = mul_linear(r, -j);
    return r;
}

std::int64_t rising_factorial(int m, int k) {
    std::int64_t r = 1;
    for (int j = 0; j < k; ++j) r *= m + j;
    return r;
}

}  // namespace

std::int64_t falling_factorial(int m, int k) {
    std::int64_t r = 1;
    for (int j = 0; j < k; ++j) r *= m - j;
    return r;
}

std::vector<std::int64_t> tahara_coeffs_exact(int l1) {
    if (l1 < 1) throw DomainError("tahara_coeffs: l1 must be >= 1");
    if (l1 > 12) throw DomainError("tahara_coeffs: l1 too large for 64-bit arithmetic");
    IPoly rem = falling_poly(l1);
    IPoly top = rising_poly(l1);
    for (std::size_t i = 0; i < top.size(); ++i) rem[i] -= top[i];
    std::vector<std::int64_t> A(static_cast<std::size_t>(std::max(0, l1 - 1)), 0);
    // rising(m, p) is monic of degree p, so the system is unit triangular.
    for (int p = l1 - 1; p >= 1; --p) {
        std::int64_t a = rem[static_cast<std::size_t>(p)];
        A[static_cast<std::size_t>(p - 1)] = a;
        IPoly rp = rising_poly(p);
        for (std::size_t i = 0; i < rp.size(); ++i) rem[i] -= a * rp[i];
    }
    for (std::int64_t c : rem)
        if (c != 0) throw NumericalError("tahara_coeffs: triangular system is inconsistent");
    return A;
}

std::vector<double> tahara_coeffs(int l1) {
    auto a = tahara_coeffs_exact(l1);
    return {a.begin(), a.end()};
}

std::int64_t tahara_rhs_on_monomial(int l1, int m) {
    auto A = tahara_coeffs_exact(l1);
    std::int64_t r = rising_factorial(m, l1);
    for (int p = 1; p < l1; ++p) r += A[static_cast<std::size_t>(p - 1)] * rising_factorial(m, p);
    return r;
}

ValidationReport validate_spec2(const ProblemSpec2& spec, const std::vector<UnboundedSector>& forbidden,
                                double disc_radius) {
    ValidationReport rep;
    if (spec.S_B < 1) rep.add("S_B", {}, "S_B must be a positive integer");
    for (std::size_t i = 0; i < spec.B.size(); ++i) {
        const auto& l = spec.B[i];
        std::vector<int> idx{l.l0, l.l1, l.l2};
        if (l.l1 < 1) rep.add("l1", idx, "l1 must be >= 1");
        if (l.d01() < 1) rep.add("d_l0l1", idx, "l0 - 2 l1 must be >= 1");
        if (spec.S_B < spec.b * (l.l0 - l.l1) + l.l2)
            rep.add("S_B_bound", idx, "S_B < b (l0 - l1) + l2");
        if (spec.S_B <= l.l2) rep.add("S_B_l2", idx, "S_B must exceed l2");
    }
    int deg = poly_degree(spec.P);
    if (deg < 0) {
        rep.add("P_B", {}, "P_B is identically zero");
    } else if (deg > 0) {
        for (cplx r : poly_roots(spec.P)) {
            if (!(r.real() > 0.0)) rep.add("P_B_roots", {}, "root outside the open right halfplane");
            if (disc_radius > 0.0 && std::abs(r) < disc_radius) rep.add("P_B_disc", {}, "root inside the disc");
            for (std::size_t s = 0; s < forbidden.size(); ++s)
                if (forbidden[s].contains(r)) rep.add("P_B_sector", {static_cast<int>(s)}, "root inside a sector");
        }
    }
    return rep;
}

namespace {

cplx kernel(cplx tau, cplx s, int g0, int g1, bool divide_by_s) {
    cplx k = std::pow(tau - s, g0) * std::pow(s, g1);
    return divide_by_s ? k / s : k;
}

void check_kernel_args(int g0, int g1, bool divide_by_s) {
    if (g0 < 0 || g1 < 0) throw DomainError("convolve_power_kernel: exponents must be nonnegative");
    if (divide_by_s && g1 == 0) throw DomainError("convolve_power_kernel: ds/s needs g1 >= 1");
}

}  // namespace

KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1, const PathSpec& L0,
                                   bool divide_by_s, int order) {
    check_kernel_args(g0, g1, divide_by_s);
    KernelResult res;
    for (const auto& piece : L0.pieces) {
        const auto* seg = std::get_if<Segment>(&piece);
        if (!seg) throw DomainError("convolve_power_kernel: L_{0,tau} must consist of segments");
        cplx z0 = seg->z0, dz = seg->z1 - seg->z0;
        if (dz == cplx(0.0)) continue;
        auto f = [&](double x) {
            cplx s = z0 + x * dz;
            return kernel(tau, s, g0, g1, divide_by_s) * v(s) * dz;
        };
        cplx one = integrate_fixed(f, 0.0, 1.0, order, 1);
        cplx two = integrate_fixed(f, 0.0, 1.0, order, 2);
        res.value += two;
        res.error += std::abs(two - one);
    }
    return res;
}

KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1, const LShape& dom,
                                   bool divide_by_s, int order) {
    return convolve_power_kernel(v, tau, g0, g1, build_L0tau(tau, dom), divide_by_s, order);
}

KernelResult convolve_power_kernel(const std::function<cplx(cplx)>& v, cplx tau, int g0, int g1,
                                   const UnboundedSector& dom, double r, bool divide_by_s, int order) {
    if (!(std::abs(tau) < r) && !dom.contains(tau))
        throw DomainError("convolve_power_kernel: tau outside S_d union D(0, r)");
    PathSpec p;
    p.pieces.push_back(Segment{0.0, tau});
    return convolve_power_kernel(v, tau, g0, g1, p, divide_by_s, order);
}

Scaled convolve_power_kernel(const PathGrid& g, const GridFunction& v, std::size_t i, int g0, int g1,
                             bool divide_by_s) {
    check_kernel_args(g0, g1, divide_by_s);
    if (i >= g.nodes.size()) throw DomainError("convolve_power_kernel: node index out of range");
    cplx tau = g.nodes[i];
    return integrate_along(g, v, g.lambda[i], [=](cplx s) { return kernel(tau, s, g0, g1, divide_by_s); });
}

CoeffTable recurse_v(const ProblemSpec2& spec, const PathGrid& g, const std::vector<GridFunction>& init,
                     const CoeffTable& forcing, cplx eps, int beta_max, unsigned workers, double singular_tol) {
    if (static_cast<int>(init.size()) != spec.S_B) throw DomainError("recurse_v: need S_B initial functions");
    if (beta_max < spec.S_B - 1) throw DomainError("recurse_v: beta_max below S_B - 1");
    if (eps == cplx(0.0)) throw DomainError("recurse_v: eps must be nonzero");
    for (const auto& l : spec.B) {
        if (l.l1 < 1 || l.d01() < 1) throw DomainError("recurse_v: every term needs l1 >= 1 and l0 - 2 l1 >= 1");
        if (l.l2 >= spec.S_B) throw DomainError("recurse_v: S_B must exceed l2");
    }
    const std::size_t n = g.nodes.size();
    for (const auto& f : init)
        if (f.size() != n) throw DomainError("recurse_v: initial data must live on the path grid nodes");
    if (!forcing.entries.empty() && forcing.nodes().size() != n)
        throw DomainError("recurse_v: forcing must live on the path grid nodes");
    std::vector<cplx> Pv(n);
    for (std::size_t i = 0; i < n; ++i) {
        Pv[i] = poly_eval(spec.P, g.nodes[i]);
        if (std::abs(Pv[i]) < singular_tol)
            throw NumericalError("recurse_v: |P_B(tau)| below tolerance at node " + std::to_string(i));
    }
    struct TermData {
        const Term2* l;
        std::vector<std::int64_t> A;
        double inv_gamma;
        cplx eps_pow;
    };
    std::vector<TermData> terms;
    for (const auto& l : spec.B)
        terms.push_back({&l, tahara_coeffs_exact(l.l1), 1.0 / gamma_fn(l.d01()), std::pow(eps, l.l1 - l.l0)});

    CoeffTable tab;
    for (const auto& f : init) {
        GridFunction c = f;
        c.tag = DomainTag::Path;
        c.spacing = g.spacing();
        tab.entries.push_back(std::move(c));
    }
    for (int beta = 0; beta + spec.S_B <= beta_max; ++beta) {
        GridFunction out = g.zeros();
        out.log_scale.assign(n, 0.0);
        parallel_for(n, workers, [&](std::size_t i) {
            cplx tau = g.nodes[i];
            Scaled sum{};
            for (const auto& td : terms) {
                const Term2& l = *td.l;
                int d = l.d01();
                Scaled inner{};
                for (int b1 = 0; b1 <= beta; ++b1) {
                    cplx c = binomial(beta, b1) * l.d.at(b1, eps);
                    if (c == cplx(0.0)) continue;
                    const GridFunction& v = tab.entries[static_cast<std::size_t>(beta - b1 + l.l2)];
                    Scaled acc = convolve_power_kernel(g, v, i, d - 1, l.l1, true) * td.inv_gamma;
                    for (int p = 1; p < l.l1; ++p) {
                        double a = static_cast<double>(td.A[static_cast<std::size_t>(p - 1)]);
                        acc = acc + convolve_power_kernel(g, v, i, d + l.l1 - p - 1, p, true) *
                                        cplx(a / gamma_fn(d + l.l1 - p));
                    }
                    inner = inner + acc * c;
                }
                sum = sum + inner * (td.eps_pow * tau / Pv[i]);
            }
            if (beta <= forcing.beta_max() && !forcing.entries.empty())
                sum = sum + forcing.entries[static_cast<std::size_t>(beta)].at(i);
            double am = std::abs(sum.m);
            out.set(i, (am > 1e-150 && am < 1e150) ? sum : sum.normalized());
        });
        tab.entries.push_back(std::move(out));
    }
    return tab;
}

}  // namespace borelkit
