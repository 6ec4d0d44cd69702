#include "borelkit/scenarios.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

#include "borelkit/poly.hpp"
#include "borelkit/quadrature.hpp"
#include "borelkit/special.hpp"

namespace borelkit {

// ---------------------------------------------------------------------------------------------
// Difference equation with an explicit contour solution

void BfiCase::check() const {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("BfiCase: a must be positive");
    double lo = kPi / 2 + 2.0 * kPi * n, hi = 3 * kPi / 2 + 2.0 * kPi * n;
    if (!(theta > lo && theta < hi))
        throw DomainError("BfiCase: theta must lie strictly inside (pi/2 + 2 n pi, 3 pi/2 + 2 n pi)");
}

namespace {

// Rounding floor of exp(-s tau) for |tau| up to tau_max: the phase carries an error of about eps_mach |s tau|.
double phase_noise(cplx s, double tau_max) {
    return 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s) * tau_max);
}

}  // namespace

BfiValue bfi_solve_detail(const BfiCase& c, cplx s, double tol) {
    c.check();
    if (!(s.real() > 0.0)) throw DomainError("bfi_solve: Re(s) must be positive");
    const cplx I(0.0, 1.0);
    // Kept in scaled form: exp(-s tau) underflows on the ray for large |s|.
    auto integrand = [&](cplx tau) {
        cplx E = -s * tau + tau - c.a + c.a * std::exp(tau);
        return Scaled{std::polar(1.0, E.imag()), E.real()};
    };
    QuadOptions q;
    q.tol = tol;
    q.noise = phase_noise(s, 3 * kPi / 2 + 2.0 * kPi * std::abs(c.n) + 8.0);
    // The integrand decays doubly exponentially between rays of the same window, so any theta in it
    // gives the same value. Integrate near the lower edge, where exp(-s tau) cancels least on the segment.
    const double theta = kPi / 2 + 2.0 * kPi * c.n + 0.13;
    QuadResult seg = integrate_scaled([&](double y) { return integrand(I * y) * I; }, 0.0, theta, q);
    // Ray i theta + x, cut where a |cos theta| e^x > 46.
    double X = std::log(46.0 / (c.a * std::abs(std::cos(theta))));
    X = std::max(X, 1.0);
    QuadResult ray = integrate_scaled([&](double x) { return integrand(I * theta + x); }, 0.0, X, q);
    BfiValue out;
    QuadResult total = seg + ray;
    out.value = total.value();
    out.scaled = Scaled{total.m, total.e};
    out.error = seg.error() + ray.error() + std::abs(integrand(I * theta + X).value());
    out.ray_end = X;
    return out;
}

cplx bfi_solve(const BfiCase& c, cplx s) { return bfi_solve_detail(c, s).value; }

BfiValue bfi_branch_difference(double a, int n, cplx s, double tol) {
    BfiCase{a, n, kPi + 2.0 * kPi * n, {}}.check();
    if (!(s.real() > 0.0)) throw DomainError("bfi_branch_difference: Re(s) must be positive");
    const cplx I(0.0, 1.0);
    auto log_integrand = [&](cplx tau) { return -s * tau + tau - a + a * std::exp(tau); };
    auto integrand = [&](cplx tau) {
        cplx E = log_integrand(tau);
        return Scaled{std::polar(1.0, E.imag()), E.real()};
    };
    const double ell = std::log(std::abs(s) / a);
    // Corner heights: minimum of the log size along Re tau = ell inside each window.
    auto corner = [&](int m) {
        double lo = kPi / 2 + 2.0 * kPi * m + 0.05, hi = 3 * kPi / 2 + 2.0 * kPi * m - 0.05, best = lo;
        double fbest = INFINITY;
        for (int i = 0; i <= 2000; ++i) {
            double y = lo + (hi - lo) * i / 2000.0;
            double f = log_integrand(cplx(ell, y)).real();
            if (f < fbest) {
                fbest = f;
                best = y;
            }
        }
        return best;
    };
    const double y0 = corner(n), y1 = corner(n + 1);
    QuadOptions q;
    q.tol = tol;
    q.noise = phase_noise(s, std::abs(cplx(ell, y1)) + 8.0);
    // Each ray is cut once the double exponential has dropped by 46 e-folds past the corner.
    auto ray = [&](double y) {
        double X = std::log(std::exp(ell) + 46.0 / (a * std::abs(std::cos(y))));
        return integrate_scaled([&](double x) { return integrand(cplx(x, y)); }, ell, X, q);
    };
    QuadResult r0 = ray(y0), r1 = ray(y1);
    QuadResult seg = integrate_scaled([&](double y) { return integrand(cplx(ell, y)) * I; }, y0, y1, q);
    QuadResult total = seg + r1 - r0;
    BfiValue out;
    out.value = total.value();
    out.scaled = Scaled{total.m, total.e};
    out.error = total.error();
    out.ray_end = ell;
    return out;
}

std::vector<cplx> bfi_default_grid() {
    std::vector<cplx> g;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) g.emplace_back(2.0 + 2.0 * i, -5.0 + 2.5 * j);
    return g;
}

BfiReport bfi_residuals(const BfiCase& c, unsigned workers) {
    c.check();
    BfiReport rep;
    rep.c = c;
    const auto& pts = c.s_samples.empty() ? bfi_default_grid() : c.s_samples;
    rep.rows.resize(pts.size());
    parallel_for(pts.size(), workers, [&](std::size_t i) {
        BfiRow r;
        r.s = pts[i];
        r.h_s = bfi_solve(c, r.s);
        r.h_s1 = bfi_solve(c, r.s + 1.0);
        cplx rhs = (c.a * r.h_s + 1.0) / r.s;
        double scale = std::max({std::abs(r.h_s1), std::abs(c.a * r.h_s / r.s), std::abs(1.0 / r.s)});
        r.residual = std::abs(r.h_s1 - rhs) / scale;
        rep.rows[i] = r;
    });
    for (const auto& r : rep.rows) rep.max_residual = std::max(rep.max_residual, r.residual);
    return rep;
}

// ---------------------------------------------------------------------------------------------
// First problem

BorelFn make_init(const std::string& kind, double a) {
    if (kind == "worked") return worked_example_w(a);
    if (kind == "tau") return [](cplx tau) { return Scaled::from(tau); };
    if (kind == "zero") return [](cplx) { return Scaled{}; };
    throw DomainError("unknown initial data kind '" + kind + "' (expected worked, tau or zero)");
}

Theorem1Config desk_theorem1_config() {
    Theorem1Config c;
    c.spec.S = 2;
    c.spec.b = 2.0;
    c.spec.A = {Term1{0, 1, 0, CoeffSeries{{0.2}, {}}}};
    c.spec.P = poly_from_roots({1.0, std::polar(1.0, 1.2), std::polar(1.0, -1.2)});
    c.strips = worked_strip_family(1, 0.1, 0.05);
    c.covering = example_good_covering();
    return c;
}

namespace {

PathSpec ray_path(double angle) {
    PathSpec p;
    p.pieces.push_back(RadialHalfline{angle, 0.0});
    return p;
}

// Along Re u = ell the log size of exp(a e^-u - u / (eps t)) is (kappa cos y - y sin phi) / |eps t|.
// Placing the corner of the HJ path at its minimum over the strip keeps the corners below the saddle
// crossed by the vertical segment, so the pieces do not cancel.
double corner_height(const Strip& s, double kappa, double phi) {
    double pad = 0.02 * (s.im_hi - s.im_lo);
    double lo = s.im_lo + pad, hi = s.im_hi - pad, best = lo, fbest = INFINITY;
    for (int i = 0; i <= 2000; ++i) {
        double y = lo + (hi - lo) * i / 2000.0;
        double f = kappa * std::cos(y) - y * std::sin(phi);
        if (f < fbest) {
            fbest = f;
            best = y;
        }
    }
    return best;
}

std::vector<BorelFn> init_functions(const std::vector<std::string>& kinds, double a) {
    std::vector<BorelFn> out;
    for (const auto& k : kinds) out.push_back(make_init(k, a));
    return out;
}

double arc_midpoint(const BoundedSector& x, const BoundedSector& y) {
    auto iv = angular_intersection(x, y);
    if (iv.empty()) throw DomainError("neighbouring sectors do not intersect");
    return 0.5 * (iv[0].first + iv[0].second);
}

struct PairPlan {
    std::string name, kind;
    FlatClass expected;
    double arg;
    std::function<DifferenceResult(const BorelFn&, cplx)> diff;
};

bool below_noise(const DifferenceResult& d) {
    if (d.total.is_zero()) return true;
    double peak = -INFINITY;
    for (const auto& p : d.pieces) peak = std::max(peak, p.value.log_abs());
    double err = d.error > 0.0 ? std::log(10.0 * d.error) + d.total.e : -INFINITY;
    return d.total.log_abs() <= std::max(err, peak + std::log(1e-12));
}

}  // namespace

Theorem1Report run_theorem1_desk(const Theorem1Config& cfg) {
    auto vs = validate_spec1(cfg.spec);
    if (!vs.ok()) throw DomainError("theorem1: problem spec invalid: " + vs.violations[0].message);
    auto vf = validate_strip_family(cfg.strips);
    if (!vf.ok()) throw DomainError("theorem1: strip family invalid: " + vf.violations[0].message);
    auto vc = validate_good_covering(cfg.covering);
    if (!vc.ok()) throw DomainError("theorem1: covering invalid: " + vc.violations[0].message);
    if (cfg.strips.n != cfg.covering.n) throw DomainError("theorem1: strips and covering disagree on n");
    if (static_cast<int>(cfg.init.size()) != cfg.spec.S) throw DomainError("theorem1: need S initial data kinds");

    const int n = cfg.strips.n;
    const std::size_t iota = cfg.covering.s.size();
    Theorem1Report rep;
    rep.name = cfg.name;
    const auto init = init_functions(cfg.init, cfg.a);
    const double arg_t = std::arg(cfg.t);
    BoundedSector t_sector{arg_t - 0.01, arg_t + 0.01, std::abs(cfg.t)};

    for (int k = -n; k <= n; ++k)
        rep.A.push_back(choose_Ak(cfg.strips.h(k), cfg.covering.e_hj(k), t_sector, cfg.decay_eta, cfg.min_abs_re, cfg.max_abs_re));
    rep.directions = cfg.directions;
    if (rep.directions.empty())
        for (const auto& s : cfg.covering.s) rep.directions.push_back(s.bisector() + arg_t);
    if (rep.directions.size() != iota) throw DomainError("theorem1: need one direction per sector E_{d_p}");

    std::vector<cplx> poles;
    if (poly_degree(cfg.spec.P) > 0) poles = poly_roots(cfg.spec.P);
    for (cplx p : poles)
        if (!(std::abs(p) < cfg.arc_radius)) throw DomainError("theorem1: arc_radius must exceed every root of P");
    PoleAwareOptions pa;
    pa.R = cfg.arc_radius;
    pa.poles = poles;

    auto Ak = [&](int k) { return rep.A[static_cast<std::size_t>(k + n)]; };
    auto w_for = [&](cplx eps) { return make_w_evaluator(cfg.spec, init, eps, cfg.beta_max, cfg.z); };

    // Representative values on every covering sector.
    const double eps_mid = cfg.ladder.eps_max * std::pow(cfg.ladder.ratio, 0.5 * cfg.ladder.n);
    for (int k = -n; k <= n; ++k) {
        cplx e = std::polar(eps_mid, cfg.covering.e_hj(k).bisector());
        auto r = laplace_eval(w_for(e), build_path_Pk(Ak(k)), e, cfg.t, cfg.laplace);
        rep.sectors.push_back({"E^" + std::to_string(k), e, r.value, r.error});
    }
    for (std::size_t p = 0; p < iota; ++p) {
        cplx e = std::polar(eps_mid, cfg.covering.s[p].bisector());
        auto r = laplace_eval(w_for(e), ray_path(rep.directions[p]), e, cfg.t, cfg.laplace);
        rep.sectors.push_back({"E_d" + std::to_string(p), e, r.value, r.error});
    }

    // Neighbour plans.
    std::vector<PairPlan> plans;
    for (int k = -n; k < n; ++k) {
        double arg = arc_midpoint(cfg.covering.e_hj(k), cfg.covering.e_hj(k + 1));
        const Strip hk = cfg.strips.h(k), hk1 = cfg.strips.h(k + 1);
        plans.push_back({"E^" + std::to_string(k + 1) + "-E^" + std::to_string(k), "hj", FlatClass::SuperExpFlat, arg,
                         [&, hk, hk1](const BorelFn& w, cplx eps) {
                             double et = std::abs(eps * cfg.t);
                             double ell = std::min(std::log(cfg.a * et), -0.25);
                             double kappa = cfg.a * std::exp(-ell) * et, phi = std::arg(eps) + arg_t;
                             cplx h0(ell, corner_height(hk, kappa, phi)), h1(ell, corner_height(hk1, kappa, phi));
                             return difference_decomposition(w, h0, h1, eps, cfg.t, cfg.laplace);
                         }});
    }
    {
        double arg = arc_midpoint(cfg.covering.e_hj(-n), cfg.covering.s.front());
        plans.push_back({"E^" + std::to_string(-n) + "-E_d0", "junction", FlatClass::ExpFlat, arg,
                         [&](const BorelFn& w, cplx eps) {
                             return pole_aware_difference(w, build_path_Pk(Ak(-n)), ray_path(rep.directions.front()), eps,
                                                          cfg.t, pa, cfg.laplace);
                         }});
        double arg2 = arc_midpoint(cfg.covering.e_hj(n), cfg.covering.s.back());
        plans.push_back({"E^" + std::to_string(n) + "-E_d" + std::to_string(iota - 1), "junction", FlatClass::ExpFlat,
                         arg2, [&](const BorelFn& w, cplx eps) {
                             return pole_aware_difference(w, build_path_Pk(Ak(n)), ray_path(rep.directions.back()), eps,
                                                          cfg.t, pa, cfg.laplace);
                         }});
    }
    for (std::size_t p = 0; p + 1 < iota; ++p) {
        double arg = arc_midpoint(cfg.covering.s[p], cfg.covering.s[p + 1]);
        plans.push_back({"E_d" + std::to_string(p + 1) + "-E_d" + std::to_string(p), "sector", FlatClass::ExpFlat, arg,
                         [&, p](const BorelFn& w, cplx eps) {
                             return pole_aware_difference(w, ray_path(rep.directions[p + 1]), ray_path(rep.directions[p]),
                                                          eps, cfg.t, pa, cfg.laplace);
                         }});
    }

    auto ladder = geometric_ladder(cfg.ladder.eps_max, cfg.ladder.n, cfg.ladder.ratio);
    bool all_pass = true, all_degenerate = true;
    for (auto& plan : plans) {
        NeighbourResult nr;
        nr.name = plan.name;
        nr.kind = plan.kind;
        nr.expected = plan.expected;
        nr.arg_eps = plan.arg;
        std::vector<cplx> eps;
        for (cplx e : ladder) eps.push_back(std::polar(std::abs(e), plan.arg));
        eps.push_back(0.5 * eps.back());  // extra point for the halving check
        std::vector<DifferenceResult> res(eps.size());
        parallel_for(eps.size(), cfg.workers, [&](std::size_t i) { res[i] = plan.diff(w_for(eps[i]), eps[i]); });
        SectorSample full;
        for (std::size_t i = 0; i < eps.size(); ++i) {
            bool noise = below_noise(res[i]);
            full.eps.push_back(eps[i]);
            full.values.push_back(noise ? Scaled{} : res[i].total);
            full.sector = {plan.arg - 0.01, plan.arg + 0.01, cfg.ladder.eps_max};
            nr.log_error.push_back(res[i].error > 0.0 ? std::log(res[i].error) + res[i].total.e : -INFINITY);
            nr.below_noise.push_back(noise);
        }
        nr.sample = full;
        nr.sample.eps.pop_back();
        nr.sample.values.pop_back();
        nr.fit = flatness_classify(nr.sample, cfg.flatness);
        nr.halved_class = flatness_classify(full, cfg.flatness).cls;
        nr.stable = nr.halved_class == nr.fit.cls;
        nr.degenerate = std::all_of(nr.below_noise.begin(), nr.below_noise.end(), [](bool b) { return b; });
        if (nr.degenerate) nr.fit.diagnostic = "degenerate-flat: every difference is below the quadrature noise floor";
        nr.pass = !nr.degenerate && nr.fit.cls == nr.expected && nr.stable;
        all_pass = all_pass && nr.pass;
        all_degenerate = all_degenerate && nr.degenerate;
        rep.pairs.push_back(std::move(nr));
    }
    rep.degenerate = all_degenerate;
    rep.all_pass = all_pass;
    if (rep.degenerate) {
        rep.diagnostic = "degenerate-flat: all neighbour differences vanish to quadrature accuracy";
    } else {
        for (const auto& p : rep.pairs)
            if (p.fit.cls == FlatClass::Inconclusive) {
                rep.diagnostic = "inconclusive " + p.name + ": " + p.fit.diagnostic;
                break;
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Second problem

Theorem2Config desk_theorem2_config() {
    Theorem2Config c;
    c.first = desk_theorem1_config();
    c.spec.S_B = 3;
    c.spec.b = 1.5;
    c.spec.B = {Term2{3, 1, 0, CoeffSeries{{1.0}, {}}}};
    c.spec.P = c.first.spec.P;
    c.eps = std::polar(0.1, 3.0);
    return c;
}

namespace {

// Fourth order central differences of (-d/drho)^l Y at rho, for l = 1, 2.
cplx fd4(const std::function<cplx(cplx)>& Y, cplx rho, cplx h, int l) {
    cplx f2 = Y(rho + 2.0 * h), f1 = Y(rho + h), fm1 = Y(rho - h), fm2 = Y(rho - 2.0 * h);
    if (l == 1) return -(-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    cplx f0 = Y(rho);
    return (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
}

}  // namespace

Theorem2Report run_theorem2_desk(const Theorem2Config& cfg) {
    const auto& first = cfg.first;
    auto v2 = validate_spec2(cfg.spec);
    if (!v2.ok()) throw DomainError("theorem2: problem spec invalid: " + v2.violations[0].message);
    const int n = first.strips.n;
    if (cfg.k < -n || cfg.k > n) throw DomainError("theorem2: k outside -n..n");
    for (const auto& t : cfg.spec.B)
        if (t.l1 > 2) throw DomainError("theorem2: the identity check supports l1 <= 2");

    Theorem2Report rep;
    rep.name = cfg.name;
    const double arg_t = std::arg(cfg.t);
    BoundedSector t_sector{arg_t - 0.01, arg_t + 0.01, std::abs(cfg.t)};
    rep.A = choose_Ak(first.strips.h(cfg.k), first.covering.e_hj(cfg.k), t_sector, first.decay_eta, first.min_abs_re,
                      first.max_abs_re);

    double margin = decay_margin(kPi, cfg.eps, cfg.t);
    if (!(margin > 0.0)) throw DomainError("theorem2: eps t violates the halfline decay condition");
    double Lh = cfg.halfline_factor * std::abs(cfg.eps * cfg.t) / margin;
    PathGrid g = path_grid_Pk(rep.A, Lh, cfg.grid);

    // Forcing from the first problem.
    CoeffTable forcing;
    if (cfg.use_forcing) {
        std::vector<GridFunction> wi;
        for (const auto& f : init_functions(first.init, first.a)) wi.push_back(g.sample(f));
        forcing = recurse_w(first.spec, wi, cfg.eps, cfg.beta_max, first.workers);
    }
    std::vector<GridFunction> vi;
    for (int j = 0; j < cfg.spec.S_B; ++j)
        vi.push_back(cfg.init.empty() ? g.zeros() : g.sample(make_init(cfg.init.at(static_cast<std::size_t>(j)), first.a)));
    CoeffTable vt = recurse_v(cfg.spec, g, vi, forcing, cfg.eps, cfg.beta_max, first.workers);
    GridFunction V = assemble_on_grid(vt, cfg.z);

    auto y_of = [&](cplx t) { return laplace_on_grid(g, V, cfg.eps, t); };
    LaplaceResult y0 = y_of(cfg.t);
    rep.y = y0.value;
    rep.y_error = y0.error;
    rep.zero_solution = true;
    for (std::size_t i = 0; i < V.size(); ++i) rep.zero_solution = rep.zero_solution && V.at(i).is_zero();

    bool all = true;
    for (std::size_t ti = 0; ti < cfg.spec.B.size(); ++ti) {
        const Term2& term = cfg.spec.B[ti];
        IdentityCheck chk;
        chk.term = static_cast<int>(ti);
        chk.d = term.d01();
        chk.l1 = term.l1;
        // Right side: eps^-(d + l1) / Gamma(d) L[u int (u - s)^{d-1} s^{l1} v ds / s].
        GridFunction F = g.zeros();
        F.log_scale.assign(F.size(), 0.0);
        parallel_for(g.nodes.size(), first.workers, [&](std::size_t i) {
            Scaled c = convolve_power_kernel(g, V, i, chk.d - 1, chk.l1, true);
            F.values[i] = c.m * g.nodes[i];
            F.log_scale[i] = c.e;
        });
        LaplaceResult rl = laplace_on_grid(g, F, cfg.eps, cfg.t);
        cplx rhs = rl.value.value() * std::pow(cfg.eps, -(chk.d + chk.l1)) / gamma_fn(chk.d);
        // Left side: t^d (t^2 d_t)^{l1} y = t^d (-d/drho)^{l1} y(1/rho).
        cplx rho = 1.0 / cfg.t;
        auto Y = [&](cplx r) { return y_of(1.0 / r).value.value(); };
        for (int j = 0; j < cfg.refinements; ++j) {
            double hs = cfg.fd_step * std::pow(0.5, j);
            cplx h = hs * rho;
            cplx lhs = std::pow(cfg.t, chk.d) * (chk.l1 == 1 ? fd4(Y, rho, h, 1) : fd4(Y, rho, h, 2));
            double scale = std::max(std::abs(rhs), std::abs(lhs));
            chk.steps.push_back(hs);
            chk.rel_errors.push_back(scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale);
        }
        if (chk.rel_errors.size() >= 2 && chk.rel_errors[0] > 0.0 && chk.rel_errors[1] > 0.0)
            chk.observed_order = std::log2(chk.rel_errors[0] / chk.rel_errors[1]);
        bool decreasing = true;
        for (std::size_t j = 1; j < chk.rel_errors.size(); ++j) decreasing = decreasing && chk.rel_errors[j] < chk.rel_errors[j - 1];
        chk.pass = rep.zero_solution || (chk.rel_errors[0] < cfg.identity_tol && decreasing && chk.observed_order > 3.0);
        all = all && chk.pass;
        rep.checks.push_back(chk);
    }
    rep.all_pass = all;
    if (cfg.spec.B.empty()) rep.diagnostic = "no operator terms: y is the Laplace transform of data and forcing only";
    if (rep.zero_solution) rep.diagnostic = "zero forcing and zero data: y vanishes identically";
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Reports

namespace {

std::string cstr(cplx z) {
    std::ostringstream os;
    os << std::setprecision(12) << z.real() << "," << z.imag();
    return os.str();
}

std::string sstr(const Scaled& s) {
    std::ostringstream os;
    os << std::setprecision(12) << s.m.real() << "," << s.m.imag() << "e^" << s.e;
    return os.str();
}

}  // namespace

std::string describe(const BfiReport& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "a=" << r.c.a << "\nn=" << r.c.n << "\ntheta=" << r.c.theta << "\npoints=" << r.rows.size()
       << "\nmax_residual=" << r.max_residual << "\npass=" << (r.max_residual < 1e-8 ? "true" : "false") << "\n";
    return os.str();
}

std::string describe(const Theorem1Report& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "name=" << r.name << "\n";
    for (std::size_t i = 0; i < r.A.size(); ++i) os << "A[" << i << "]=" << cstr(r.A[i]) << "\n";
    for (std::size_t i = 0; i < r.directions.size(); ++i) os << "d[" << i << "]=" << r.directions[i] << "\n";
    for (const auto& s : r.sectors) os << "u[" << s.sector << "]@" << cstr(s.eps) << "=" << sstr(s.u) << "\n";
    for (const auto& p : r.pairs) {
        os << "pair=" << p.name << " kind=" << p.kind << " expected=" << to_string(p.expected)
           << " class=" << to_string(p.fit.cls) << " halved=" << to_string(p.halved_class)
           << " stable=" << (p.stable ? "true" : "false") << " degenerate=" << (p.degenerate ? "true" : "false")
           << " M=" << p.fit.M << " L=" << p.fit.L << " pass=" << (p.pass ? "true" : "false") << "\n";
    }
    os << "degenerate=" << (r.degenerate ? "true" : "false") << "\nall_pass=" << (r.all_pass ? "true" : "false")
       << "\ndiagnostic=" << r.diagnostic << "\n";
    return os.str();
}

std::string describe(const Theorem2Report& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "name=" << r.name << "\nA=" << cstr(r.A) << "\ny=" << sstr(r.y) << "\nzero_solution="
       << (r.zero_solution ? "true" : "false") << "\n";
    for (const auto& c : r.checks) {
        os << "identity term=" << c.term << " d=" << c.d << " l1=" << c.l1 << " order=" << c.observed_order
           << " pass=" << (c.pass ? "true" : "false") << " errors=";
        for (std::size_t j = 0; j < c.rel_errors.size(); ++j) os << (j ? ";" : "") << c.steps[j] << ":" << c.rel_errors[j];
        os << "\n";
    }
    os << "all_pass=" << (r.all_pass ? "true" : "false") << "\ndiagnostic=" << r.diagnostic << "\n";
    return os.str();
}

}  // namespace borelkit
