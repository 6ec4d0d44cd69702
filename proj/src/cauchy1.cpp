#include "borelkit/cauchy1.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "borelkit/special.hpp"

namespace borelkit {

namespace {

struct Prepared {
    std::vector<std::vector<cplx>> c;  // c[k][beta]
    std::vector<std::vector<double>> binom;
};

Prepared prepare(const ProblemSpec1& spec, cplx eps, int beta_max) {
    Prepared pr;
    for (const auto& t : spec.A) {
        std::vector<cplx> row(static_cast<std::size_t>(beta_max + 1));
        for (int b = 0; b <= beta_max; ++b) row[static_cast<std::size_t>(b)] = t.c.at(b, eps);
        pr.c.push_back(std::move(row));
    }
    pr.binom.assign(static_cast<std::size_t>(beta_max + 1), std::vector<double>(static_cast<std::size_t>(beta_max + 1), 0.0));
    for (int n = 0; n <= beta_max; ++n)
        for (int k = 0; k <= n; ++k) pr.binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = binomial(n, k);
    return pr;
}

std::string node_name(cplx tau) {
    std::ostringstream os;
    os.precision(10);
    os << "(" << tau.real() << ", " << tau.imag() << ")";
    return os.str();
}

std::vector<cplx> multipliers(const ProblemSpec1& spec, cplx tau, cplx eps, double singular_tol) {
    std::vector<cplx> m;
    if (spec.A.empty()) return m;
    cplx P = poly_eval(spec.P, tau);
    if (std::abs(P) < singular_tol) throw NumericalError("recurse_w: |P(tau)| below tolerance at node " + node_name(tau));
    for (const auto& t : spec.A)
        m.push_back(std::pow(tau / eps, t.k0) * std::exp(-double(t.k2) * tau) / P);
    return m;
}

std::vector<cplx> run(const ProblemSpec1& spec, const Prepared& pr, const std::vector<cplx>& init, cplx tau, cplx eps,
                      int beta_max, double singular_tol) {
    std::vector<cplx> w(static_cast<std::size_t>(beta_max + 1), cplx(0.0));
    for (int j = 0; j < spec.S && j <= beta_max; ++j) w[static_cast<std::size_t>(j)] = init[static_cast<std::size_t>(j)];
    if (spec.A.empty()) return w;
    auto m = multipliers(spec, tau, eps, singular_tol);
    for (int beta = 0; beta + spec.S <= beta_max; ++beta) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < spec.A.size(); ++k) {
            const int k1 = spec.A[k].k1;
            cplx inner{0.0, 0.0};
            for (int b1 = 0; b1 <= beta; ++b1) {
                cplx c = pr.c[k][static_cast<std::size_t>(b1)];
                if (c == cplx(0.0)) continue;
                inner += pr.binom[static_cast<std::size_t>(beta)][static_cast<std::size_t>(b1)] * c *
                         w[static_cast<std::size_t>(beta - b1 + k1)];
            }
            acc += m[k] * inner;
        }
        w[static_cast<std::size_t>(beta + spec.S)] = acc;
    }
    return w;
}

void check_structure(const ProblemSpec1& spec) {
    if (spec.S < 1) throw DomainError("ProblemSpec1: S must be positive");
    if (poly_degree(spec.P) < 0) throw DomainError("ProblemSpec1: P is identically zero");
    for (const auto& t : spec.A) {
        if (t.k0 < 0 || t.k1 < 0 || t.k2 < 0) throw DomainError("ProblemSpec1: negative index in A");
        if (!(spec.S > t.k1)) throw DomainError("ProblemSpec1: S must exceed k1");
    }
}

}  // namespace

ValidationReport validate_spec1(const ProblemSpec1& spec, double sigma3p, double varsigma3p) {
    ValidationReport rep;
    if (spec.S < 1) rep.add("S", {spec.S}, "S must be positive");
    if (poly_degree(spec.P) < 0) {
        rep.add("P", {}, "P is identically zero");
    } else {
        auto roots = poly_roots(spec.P);
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (!(roots[i].real() > 1e-10))
                rep.add("P.roots", {static_cast<int>(i)}, "root " + node_name(roots[i]) + " not in the open right halfplane");
    }
    for (std::size_t i = 0; i < spec.A.size(); ++i) {
        const auto& t = spec.A[i];
        int idx = static_cast<int>(i);
        if (t.k0 < 0 || t.k1 < 0 || t.k2 < 0) rep.add("A.indices", {idx}, "negative index");
        if (!(spec.S > t.k1)) rep.add("cond_SPCP_first", {idx}, "S > k1 fails");
        if (!(spec.S >= t.k1 + spec.b * t.k0 + spec.b * t.k2 / spec.xi - 1e-12))
            rep.add("cond_SPCP_first", {idx}, "S >= k1 + b k0 + b k2 / xi fails");
    }
    if (sigma3p > 0.0 && varsigma3p > 0.0 && spec.xi > std::min(sigma3p, varsigma3p) + 1e-15)
        rep.add("xi", {}, "xi must not exceed min(sigma3', varsigma3')");
    return rep;
}

std::vector<cplx> recurse_w_at(const ProblemSpec1& spec, const std::vector<cplx>& init, cplx tau, cplx eps, int beta_max,
                               double singular_tol) {
    check_structure(spec);
    if (static_cast<int>(init.size()) != spec.S) throw DomainError("recurse_w: need S initial values");
    if (beta_max < spec.S) throw DomainError("recurse_w: beta_max must be at least S");
    return run(spec, prepare(spec, eps, beta_max), init, tau, eps, beta_max, singular_tol);
}

CoeffTable recurse_w(const ProblemSpec1& spec, const std::vector<GridFunction>& init, cplx eps, int beta_max,
                     unsigned workers, double singular_tol) {
    check_structure(spec);
    if (static_cast<int>(init.size()) != spec.S) throw DomainError("recurse_w: need S initial grid functions");
    if (beta_max < spec.S) throw DomainError("recurse_w: beta_max must be at least S");
    for (const auto& g : init) {
        g.check();
        if (g.nodes != init[0].nodes) throw DomainError("recurse_w: initial functions must share a node set");
    }
    const auto& nodes = init[0].nodes;
    Prepared pr = prepare(spec, eps, beta_max);
    CoeffTable tab;
    for (int b = 0; b <= beta_max; ++b) tab.entries.push_back(GridFunction::zeros(init[0].tag, nodes, init[0].spacing));
    std::vector<std::vector<cplx>> rows(nodes.size());
    std::vector<double> scale(nodes.size(), 0.0);
    parallel_for(nodes.size(), workers, [&](std::size_t i) {
        double E = -INFINITY;
        for (const auto& g : init)
            if (g.values[i] != cplx(0.0)) E = std::max(E, g.exponent(i));
        if (E == -INFINITY) E = 0.0;
        std::vector<cplx> v;
        for (const auto& g : init) v.push_back(g.values[i] == cplx(0.0) ? cplx(0.0) : g.values[i] * std::exp(g.exponent(i) - E));
        rows[i] = run(spec, pr, v, nodes[i], eps, beta_max, singular_tol);
        scale[i] = E;
    });
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int b = 0; b <= beta_max; ++b) tab.entries[static_cast<std::size_t>(b)].set(i, {rows[i][static_cast<std::size_t>(b)], scale[i]});
    return tab;
}

BorelFn make_w_evaluator(const ProblemSpec1& spec, std::vector<BorelFn> init, cplx eps, int beta_max, cplx z) {
    check_structure(spec);
    if (static_cast<int>(init.size()) != spec.S) throw DomainError("make_w_evaluator: need S initial functions");
    if (beta_max < spec.S) throw DomainError("make_w_evaluator: beta_max must be at least S");
    auto pr = std::make_shared<Prepared>(prepare(spec, eps, beta_max));
    std::vector<cplx> zp(static_cast<std::size_t>(beta_max + 1));
    for (int b = 0; b <= beta_max; ++b) zp[static_cast<std::size_t>(b)] = std::pow(z, b) / factorial(b);
    if (z == cplx(0.0)) zp[0] = 1.0;
    return [spec, pr, init = std::move(init), eps, beta_max, zp](cplx tau) -> Scaled {
        std::vector<Scaled> iv;
        double E = -INFINITY;
        for (const auto& f : init) {
            iv.push_back(f(tau));
            if (!iv.back().is_zero()) E = std::max(E, iv.back().e);
        }
        if (E == -INFINITY) return {};
        std::vector<cplx> v;
        for (const auto& s : iv) v.push_back(s.is_zero() ? cplx(0.0) : s.m * std::exp(s.e - E));
        auto w = run(spec, *pr, v, tau, eps, beta_max, 0.0);
        cplx acc{0.0, 0.0};
        for (int b = 0; b <= beta_max; ++b) acc += w[static_cast<std::size_t>(b)] * zp[static_cast<std::size_t>(b)];
        return {acc, E};
    };
}

CoeffTable apply_A_eps(const ProblemSpec1& spec, const CoeffTable& U, const std::vector<GridFunction>& init, cplx eps) {
    check_structure(spec);
    U.check();
    const int B = U.beta_max();
    const auto& nodes = U.nodes();
    const bool has_init = !init.empty();
    if (has_init && static_cast<int>(init.size()) != spec.S) throw DomainError("apply_A_eps: need S initial functions");
    for (const auto& g : init)
        if (g.nodes != nodes) throw DomainError("apply_A_eps: initial functions must share the table nodes");
    Prepared pr = prepare(spec, eps, B);
    CoeffTable out;
    for (int b = 0; b <= B; ++b) out.entries.push_back(GridFunction::zeros(U.tag(), nodes, U.entries[0].spacing));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto m = multipliers(spec, nodes[i], eps, 1e-12);
        for (int beta = 0; beta <= B; ++beta) {
            Scaled acc;
            for (std::size_t k = 0; k < spec.A.size(); ++k) {
                const int k1 = spec.A[k].k1;
                const int shift = spec.S - k1;
                Scaled inner;
                for (int b1 = 0; b1 <= beta; ++b1) {
                    cplx c = pr.c[k][static_cast<std::size_t>(b1)];
                    if (c == cplx(0.0)) continue;
                    const int g = beta - b1;
                    Scaled F;
                    if (g >= shift) F = U.entries[static_cast<std::size_t>(g - shift)].at(i);
                    if (has_init && g + k1 < spec.S) F = F + init[static_cast<std::size_t>(g + k1)].at(i);
                    if (F.is_zero()) continue;
                    inner = inner + F * (pr.binom[static_cast<std::size_t>(beta)][static_cast<std::size_t>(b1)] * c);
                }
                acc = acc + inner * m[k];
            }
            out.entries[static_cast<std::size_t>(beta)].set(i, acc.normalized());
        }
    }
    return out;
}

namespace {

CoeffTable difference(const CoeffTable& a, const CoeffTable& b) {
    CoeffTable d = a;
    for (std::size_t e = 0; e < d.entries.size(); ++e)
        for (std::size_t i = 0; i < d.entries[e].size(); ++i) d.entries[e].set(i, (a.entries[e].at(i) - b.entries[e].at(i)).normalized());
    return d;
}

CoeffTable random_table(const std::vector<cplx>& nodes, int B, NormKind kind, const NormParams& p, double radius,
                        std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> R01(0.05, 1.0);
    CoeffTable t;
    for (int b = 0; b <= B; ++b) {
        auto g = GridFunction::zeros(DomainTag::StripH, nodes);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            g.set(i, {cplx(U(rng), U(rng)) * nodes[i], -weight_exponent(kind, p, b, std::abs(nodes[i]))});
        t.entries.push_back(std::move(g));
    }
    double target = radius * R01(rng);
    double n = series_norm(t, kind, p).value;
    if (n > 0.0)
        for (auto& e : t.entries)
            for (auto& v : e.values) v *= target / n;
    return t;
}

}  // namespace

ContractionReport contraction_check(const ProblemSpec1& spec, const NormParams& p, cplx eps, double R, int trials,
                                    const ContractionOptions& opt) {
    check_structure(spec);
    ContractionReport rep;
    rep.trials = trials;
    std::vector<cplx> nodes = opt.nodes;
    if (nodes.empty()) nodes = strip_grid(worked_strip_family(1, 0.1, 0.05).h(0), -6.0, 24, 9);
    const int B = opt.beta_max - spec.S;
    if (B < 0) throw DomainError("contraction_check: beta_max must be at least S");
    NormParams q = p;
    q.eps = eps;
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < trials; ++t) {
        auto U1 = random_table(nodes, B, opt.kind, q, R, rng);
        auto U2 = random_table(nodes, B, opt.kind, q, R, rng);
        auto A1 = apply_A_eps(spec, U1, {}, eps);
        auto A2 = apply_A_eps(spec, U2, {}, eps);
        auto num = series_norm(difference(A1, A2), opt.kind, q);
        auto den = series_norm(difference(U1, U2), opt.kind, q);
        if (!std::isfinite(num.log_value) && num.log_value > 0) rep.divergent = true;
        double ratio = den.log_value == -INFINITY ? 0.0 : (num.log_value == -INFINITY ? 0.0 : std::exp(num.log_value - den.log_value));
        if (!std::isfinite(ratio)) rep.divergent = true;
        rep.ratios.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    if (!opt.init.empty()) {
        for (const auto& g : opt.init)
            if (g.nodes != nodes) throw DomainError("contraction_check: init must live on the contraction nodes");
        auto w = recurse_w(spec, opt.init, eps, opt.beta_max);
        CoeffTable Ustar;
        for (int b = 0; b <= B; ++b) Ustar.entries.push_back(w.entries[static_cast<std::size_t>(b + spec.S)]);
        for (auto& e : Ustar.entries) e.tag = DomainTag::StripH;
        auto init = opt.init;
        for (auto& g : init) g.tag = DomainTag::StripH;
        auto AU = apply_A_eps(spec, Ustar, init, eps);
        auto res = series_norm(difference(AU, Ustar), opt.kind, q);
        auto ref = series_norm(Ustar, opt.kind, q);
        if (ref.log_value == -INFINITY)
            rep.fixed_point_residual = res.value;
        else
            rep.fixed_point_residual = res.log_value == -INFINITY ? 0.0 : std::exp(res.log_value - ref.log_value);
    }
    return rep;
}

double find_contraction_delta(const ProblemSpec1& spec, NormParams p, cplx eps, double target, double delta_hi,
                              const ContractionOptions& opt) {
    auto ratio = [&](double d) {
        p.delta = d;
        return contraction_check(spec, p, eps, 1.0, 8, opt).max_ratio;
    };
    if (ratio(delta_hi) <= target) return delta_hi;
    double lo = delta_hi * 1e-6, hi = delta_hi;
    if (ratio(lo) > target) throw NumericalError("find_contraction_delta: no feasible delta found");
    for (int it = 0; it < 40; ++it) {
        double mid = std::sqrt(lo * hi);
        if (ratio(mid) <= target) lo = mid; else hi = mid;
    }
    return lo;
}

AdmissibleConstants admissible_constants(double a, double eta, double eta1, double m, int n, double sigma1p, double M) {
    if (!(M > 1.0)) throw DomainError("admissible_constants: M must exceed 1");
    if (!(a > 0.0 && m > 0.0 && sigma1p > 0.0)) throw DomainError("admissible_constants: a, m, sigma1' must be positive");
    auto fam = worked_strip_family(n, eta, eta1);
    if (!validate_strip_family(fam).ok()) throw DomainError("admissible_constants: eta, eta1 do not give a valid strip family");
    AdmissibleConstants c;
    // cos on [pi/2 + eta, 3pi/2 - eta] peaks at the endpoints.
    c.delta_eta = -std::max(std::cos(kPi / 2 + eta), std::cos(3 * kPi / 2 - eta));
    double K = INFINITY;
    for (int k = -n; k <= n; ++k) {
        const Strip& h = fam.h(k);
        double y = std::max(std::abs(h.im_lo), std::abs(h.im_hi));
        K = std::min(K, m / std::sqrt(m * m + y * y));
    }
    c.K_mn = K;
    c.sigma1p = sigma1p;
    c.sigma2p = a * c.delta_eta / (M - 1.0);
    c.sigma3p = K;
    c.varsigma2p = a;
    c.varsigma3p = 1.0;
    return c;
}

BorelFn worked_example_w(double a) {
    return [a](cplx tau) -> Scaled {
        cplx ex = a * std::exp(-tau);
        return {tau * std::polar(1.0, ex.imag()), ex.real()};
    };
}

AdmissibleReport verify_admissible_bounds(const BorelFn& w, const StripFamily& strips, const AdmissibleConstants& c,
                                          const AdmissibleGrid& grid) {
    AdmissibleReport rep;
    NormParams p;
    p.w = WeightSeq(grid.b, grid.M);
    p.eps = grid.eps;
    p.sigma1 = c.sigma1p;
    p.sigma2 = c.sigma2p;
    p.sigma3 = c.sigma3p;
    p.varsigma2 = c.varsigma2p;
    p.varsigma3 = c.varsigma3p;
    auto one = [&](const Strip& s, StripKind kind, int k) {
        auto nodes = strip_grid(s, grid.re_min, grid.n_re, grid.n_im);
        auto g = GridFunction::sample(kind == StripKind::H ? DomainTag::StripH : DomainTag::StripJ, nodes, w);
        NormKind nk = kind == StripKind::H ? NormKind::SED : NormKind::SEG;
        auto est = weighted_norm(g, 0, nk, p);
        StripBound sb{kind, k, est.value, false};
        // Growth: the largest weighted value sits in the outermost Re column.
        if (est.argmax >= 0) {
            double re = nodes[static_cast<std::size_t>(est.argmax)].real();
            if (re <= grid.re_min * 0.98) sb.growth = true;
        }
        if (!std::isfinite(est.value)) sb.growth = true;
        rep.strips.push_back(sb);
        rep.I_w = std::max(rep.I_w, est.value);
    };
    for (int k = -strips.n; k <= strips.n; ++k) {
        one(strips.h(k), StripKind::H, k);
        one(strips.j(k), StripKind::J, k);
    }
    return rep;
}

}  // namespace borelkit
