#include "borelkit/laplace.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "borelkit/special.hpp"

namespace borelkit {

double decay_margin(double theta, cplx eps, cplx t) { return std::cos(theta - std::arg(eps) - std::arg(t)); }

namespace {

// w(u) du / u * exp(-u / (eps t)) in scaled form.
Scaled kernel_term(const BorelFn& w, cplx u, cplx du, cplx inv_et) {
    Scaled wv = w(u);
    if (wv.is_zero()) return {};
    cplx ex = -u * inv_et;
    return {wv.m * du / u * std::polar(1.0, ex.imag()), wv.e + ex.real()};
}

LaplaceResult from_quad(const QuadResult& q) {
    LaplaceResult r;
    r.value = {q.m, q.e};
    r.error = q.err;
    r.piece_errors.push_back(q.err);
    return r;
}

// Expresses b's error in the exponent of a.
double rescale_error(double err, double from_e, double to_e) {
    if (err == 0.0) return 0.0;
    return err * std::exp(from_e - to_e);
}

LaplaceResult add(const LaplaceResult& a, const LaplaceResult& b, double sign = 1.0) {
    LaplaceResult r;
    r.value = a.value + b.value * cplx(sign);
    double e = r.value.is_zero() ? std::max(a.value.e, b.value.e) : r.value.e;
    if (r.value.is_zero()) r.value.e = e;
    r.error = rescale_error(a.error, a.value.e, e) + rescale_error(b.error, b.value.e, e);
    r.piece_errors = a.piece_errors;
    for (double x : b.piece_errors) r.piece_errors.push_back(rescale_error(x, b.value.e, e));
    return r;
}

// The kernel phase Im(-u / (eps t)) carries an absolute rounding error of about eps_mach |u / (eps t)|.
QuadOptions quad_opts(const LaplaceOptions& opt, double max_abs_u = 0.0, cplx inv_et = 0.0) {
    QuadOptions q;
    q.tol = opt.tol;
    q.noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs_u * std::abs(inv_et));
    return q;
}

LaplaceResult integrate_segment(const BorelFn& w, cplx z0, cplx z1, cplx inv_et, const LaplaceOptions& opt) {
    cplx dz = z1 - z0;
    if (dz == cplx(0.0)) return {};
    auto f = [&](double x) { return kernel_term(w, z0 + x * dz, dz, inv_et); };
    return from_quad(integrate_scaled(f, 0.0, 1.0, quad_opts(opt, std::max(std::abs(z0), std::abs(z1)), inv_et)));
}

LaplaceResult integrate_arc(const BorelFn& w, const Arc& a, cplx inv_et, const LaplaceOptions& opt) {
    double span = a.theta1 - a.theta0;
    if (span == 0.0) return {};
    auto f = [&](double x) {
        cplx u = std::polar(a.radius, a.theta0 + x * span);
        return kernel_term(w, u, cplx(0.0, 1.0) * u * span, inv_et);
    };
    return from_quad(integrate_scaled(f, 0.0, 1.0, quad_opts(opt, a.radius, inv_et)));
}

// Halfline u0 + x e^{i theta}, x >= 0.
LaplaceResult integrate_halfline(const BorelFn& w, cplx u0, double theta, cplx eps, cplx t,
                                 const LaplaceOptions& opt) {
    double margin = decay_margin(theta, eps, t);
    if (!(margin > 0.0)) {
        std::ostringstream os;
        os << "laplace: decay condition fails along direction " << theta << " (arg eps + arg t = "
           << std::arg(eps) + std::arg(t) << ", cos = " << margin << ")";
        throw DomainError(os.str());
    }
    cplx inv_et = 1.0 / (eps * t);
    cplx dir = std::polar(1.0, theta);
    double rate = margin / std::abs(eps * t);
    double L = std::log(1.0 / opt.truncation_tol) / rate;
    auto f = [&](double x) { return kernel_term(w, u0 + x * dir, dir, inv_et); };
    LaplaceResult acc = from_quad(integrate_scaled(f, 0.0, L, quad_opts(opt, std::abs(u0) + L, inv_et)));
    double lo = 0.0;
    for (int ext = 0;; ++ext) {
        // Tail bound assuming decay at the kernel rate from the cut onward.
        Scaled end = f(L);
        double tail = end.is_zero() ? -INFINITY : end.log_abs() - std::log(rate);
        double ref = acc.value.is_zero() ? -INFINITY : acc.value.log_abs();
        bool small = tail == -INFINITY || (ref != -INFINITY && tail < ref + std::log(opt.truncation_tol));
        if (ref == -INFINITY && tail == -INFINITY) break;
        if (small) {
            if (tail != -INFINITY) acc.error += std::exp(tail - acc.value.e);
            break;
        }
        if (ext >= opt.max_extensions)
            throw NumericalError("laplace: integrand does not decay along the halfline within the extension budget");
        lo = L;
        L *= 2.0;
        acc = add(acc, from_quad(integrate_scaled(f, lo, L, quad_opts(opt, std::abs(u0) + L, inv_et))));
    }
    acc.piece_errors = {acc.error};
    return acc;
}

LaplaceResult integrate_piece(const BorelFn& w, const PathPiece& p, cplx eps, cplx t, const LaplaceOptions& opt) {
    cplx inv_et = 1.0 / (eps * t);
    if (const auto* s = std::get_if<Segment>(&p)) return integrate_segment(w, s->z0, s->z1, inv_et, opt);
    if (const auto* h = std::get_if<HorizontalHalfline>(&p)) return integrate_halfline(w, h->anchor, kPi, eps, t, opt);
    if (const auto* r = std::get_if<RadialHalfline>(&p))
        return integrate_halfline(w, std::polar(r->r_lo, r->angle), r->angle, eps, t, opt);
    return integrate_arc(w, std::get<Arc>(p), inv_et, opt);
}

void check_origin(const BorelFn& w, const PathSpec& path) {
    if (path.pieces.empty()) return;
    const PathPiece& first = path.pieces.front();
    if (std::abs(piece_start(first)) > 0.0) return;
    cplx d;
    if (const auto* s = std::get_if<Segment>(&first))
        d = s->z1 / std::abs(s->z1);
    else if (const auto* r = std::get_if<RadialHalfline>(&first))
        d = std::polar(1.0, r->angle);
    else
        d = -1.0;
    Scaled near = w(1e-12 * d), far = w(1e-6 * d);
    if (near.is_zero() || far.is_zero()) {
        if (!near.is_zero()) throw DomainError("laplace: integrand does not vanish at u = 0");
        return;
    }
    if (near.log_abs() > far.log_abs() + std::log(1e-3))
        throw DomainError("laplace: integrand does not vanish at u = 0");
}

}  // namespace

LaplaceResult laplace_eval(const BorelFn& w, const PathSpec& path, cplx eps, cplx t, const LaplaceOptions& opt) {
    if (eps == cplx(0.0) || t == cplx(0.0)) throw DomainError("laplace: eps and t must be nonzero");
    if (path.pieces.empty()) throw DomainError("laplace: empty path");
    if (!path_connected(path)) throw DomainError("laplace: path pieces are not connected");
    for (const auto& p : path.pieces)
        if (is_unbounded(p) && !(decay_margin(unbounded_direction(p), eps, t) > 0.0)) {
            std::ostringstream os;
            os << "laplace: decay condition fails along direction " << unbounded_direction(p)
               << " (arg eps + arg t = " << std::arg(eps) + std::arg(t) << ")";
            throw DomainError(os.str());
        }
    if (!opt.allow_nonzero_at_origin) check_origin(w, path);
    LaplaceResult total;
    bool first = true;
    for (const auto& p : path.pieces) {
        LaplaceResult r = integrate_piece(w, p, eps, t, opt);
        total = first ? r : add(total, r);
        first = false;
    }
    return total;
}

LaplaceResult laplace_eval(const LaplaceJob& job) { return laplace_eval(job.integrand, job.path, job.eps, job.t, job.opt); }

LaplaceResult laplace_on_grid(const PathGrid& g, const GridFunction& v, cplx eps, cplx t) {
    if (v.size() != g.nodes.size()) throw DomainError("laplace_on_grid: grid function does not match the path grid");
    cplx last_dir = g.tangent(g.length());
    if (!(decay_margin(std::arg(last_dir), eps, t) > 0.0))
        throw DomainError("laplace_on_grid: decay condition fails along the final direction of the grid");
    cplx inv_et = 1.0 / (eps * t);
    // A higher order rule on the interpolant isolates the kernel resolution error.
    const int ref_order = g.order + g.order / 2;
    const GLRule& ref = gauss_legendre(ref_order);
    LaplaceResult total;
    Scaled refined{};
    for (std::size_t p = 0; p < g.panels(); ++p) {
        Scaled acc{};
        std::size_t base = p * static_cast<std::size_t>(g.order);
        for (int i = 0; i < g.order; ++i) {
            std::size_t ii = base + static_cast<std::size_t>(i);
            Scaled s = v.at(ii);
            if (s.is_zero()) continue;
            cplx u = g.nodes[ii];
            cplx ex = -u * inv_et;
            acc = acc + Scaled{s.m * g.weights[ii] * g.tangent(g.lambda[ii]) / u * std::polar(1.0, ex.imag()),
                               s.e + ex.real()};
        }
        total.value = total.value + acc;
        double a = g.breaks[p], b = g.breaks[p + 1];
        for (int i = 0; i < ref_order; ++i) {
            double lam = 0.5 * (a + b) + 0.5 * (b - a) * ref.x[static_cast<std::size_t>(i)];
            Scaled s = interpolate(g, v, lam);
            if (s.is_zero()) continue;
            cplx u = g.point(lam);
            cplx ex = -u * inv_et;
            refined = refined + Scaled{s.m * 0.5 * (b - a) * ref.w[static_cast<std::size_t>(i)] * g.tangent(lam) / u *
                                   std::polar(1.0, ex.imag()),
                               s.e + ex.real()};
        }
    }
    Scaled diff = total.value - refined;
    total.error = diff.is_zero() ? 0.0 : std::exp(diff.log_abs() - total.value.e);
    // Kernel tail beyond the end of the grid.
    std::size_t n = g.nodes.size();
    if (n > 0 && !v.at(n - 1).is_zero()) {
        cplx u = g.nodes[n - 1];
        double rate = decay_margin(std::arg(last_dir), eps, t) / std::abs(eps * t);
        double tail = v.at(n - 1).log_abs() - std::log(std::abs(u)) - (u * inv_et).real() - std::log(rate);
        total.error += std::exp(tail - total.value.e);
    }
    total.piece_errors = {total.error};
    return total;
}

GridFunction assemble_on_grid(const CoeffTable& tab, cplx z) {
    tab.check();
    GridFunction out = GridFunction::zeros(DomainTag::Path, tab.nodes(), tab.entries[0].spacing);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Scaled acc{};
        for (int b = 0; b <= tab.beta_max(); ++b) {
            Scaled vb = tab.entries[static_cast<std::size_t>(b)].at(i);
            if (vb.is_zero()) continue;
            if (b > 0 && z == cplx(0.0)) break;
            cplx zb = b == 0 ? cplx(1.0) : std::pow(z, b);
            acc = acc + Scaled{vb.m * zb, vb.e - log_factorial(b)};
        }
        out.set(i, acc);
    }
    return out;
}

cplx truncated_laplace(const std::function<cplx(cplx)>& V, cplx Gamma, cplx Omega, cplx s, cplx eps, double tol) {
    if (eps == cplx(0.0) || s == cplx(0.0) || Omega == cplx(0.0)) throw DomainError("truncated_laplace: zero argument");
    if (!(Gamma.real() < 0.0)) throw DomainError("truncated_laplace: Gamma must have negative real part");
    cplx q = Omega * s / eps;
    if (q.real() <= 0.0 && std::abs(q.imag()) <= 1e-14 * std::abs(q))
        throw DomainError("truncated_laplace: Omega s / eps lies on the branch cut of Log");
    cplx E = Gamma * std::log(q);
    QuadOptions o;
    o.tol = tol;
    auto f = [&](double x) {
        cplx tau = x * E;
        return V(tau) * std::exp(-s * tau / eps) * E;
    };
    return integrate(f, 0.0, 1.0, o).value();
}

namespace {

DifferenceResult combine(std::vector<LaplaceResult> pieces) {
    DifferenceResult out;
    LaplaceResult acc;
    bool first = true;
    for (const auto& p : pieces) {
        acc = first ? p : add(acc, p);
        first = false;
    }
    out.total = acc.value;
    out.error = acc.error;
    out.pieces = std::move(pieces);
    return out;
}

LaplaceResult negate(LaplaceResult r) {
    r.value.m = -r.value.m;
    return r;
}

}  // namespace

DifferenceResult difference_decomposition(const BorelFn& w, cplx h_k, cplx h_k1, cplx eps, cplx t,
                                          const LaplaceOptions& opt, std::optional<cplx> A_k,
                                          std::optional<cplx> A_k1) {
    cplx inv_et = 1.0 / (eps * t);
    LaplaceResult i1 = negate(integrate_halfline(w, h_k, kPi, eps, t, opt));
    LaplaceResult i2 = integrate_segment(w, h_k, h_k1, inv_et, opt);
    LaplaceResult i3 = integrate_halfline(w, h_k1, kPi, eps, t, opt);
    DifferenceResult out = combine({i1, i2, i3});
    if (A_k && A_k1) {
        LaplaceResult a = laplace_eval(w, build_path_Pk(*A_k), eps, t, opt);
        LaplaceResult b = laplace_eval(w, build_path_Pk(*A_k1), eps, t, opt);
        out.direct = b.as_complex() - a.as_complex();
        out.direct_error = a.abs_error() + b.abs_error();
    }
    return out;
}

DifferenceResult sector_difference_decomposition(const BorelFn& w_a, const BorelFn& w_b, double r, double gamma_a,
                                                 double gamma_b, cplx eps, cplx t, const LaplaceOptions& opt,
                                                 bool with_direct) {
    if (!(r > 0.0)) throw DomainError("sector_difference: radius must be positive");
    for (double rr : {0.25 * r, 0.5 * r, 0.9 * r})
        for (int k = 0; k < 16; ++k) {
            cplx u = std::polar(rr, 2.0 * kPi * k / 16.0);
            Scaled a = w_a(u), b = w_b(u);
            Scaled d = a - b;
            double scale = std::max(a.log_abs(), b.log_abs());
            if (!d.is_zero() && d.log_abs() > scale + std::log(1e-8))
                throw DomainError("sector_difference: the two functions differ on the common disc");
        }
    cplx inv_et = 1.0 / (eps * t);
    LaplaceResult lb = integrate_halfline(w_b, std::polar(0.5 * r, gamma_b), gamma_b, eps, t, opt);
    LaplaceResult la = negate(integrate_halfline(w_a, std::polar(0.5 * r, gamma_a), gamma_a, eps, t, opt));
    LaplaceResult arc = integrate_arc(w_a, Arc{0.5 * r, gamma_a, gamma_b}, inv_et, opt);
    DifferenceResult out = combine({lb, arc, la});
    if (with_direct) {
        PathSpec pa, pb;
        pa.pieces.push_back(RadialHalfline{gamma_a, 0.0});
        pb.pieces.push_back(RadialHalfline{gamma_b, 0.0});
        LaplaceResult a = laplace_eval(w_a, pa, eps, t, opt), b = laplace_eval(w_b, pb, eps, t, opt);
        out.direct = b.as_complex() - a.as_complex();
        out.direct_error = a.abs_error() + b.abs_error();
    }
    return out;
}

Scaled loop_integral(const BorelFn& w, cplx p, double rho, cplx eps, cplx t, int points) {
    cplx inv_et = 1.0 / (eps * t);
    Scaled acc{};
    for (int j = 0; j < points; ++j) {
        cplx e = std::polar(1.0, 2.0 * kPi * j / points);
        cplx u = p + rho * e;
        acc = acc + kernel_term(w, u, cplx(0.0, 1.0) * rho * e * (2.0 * kPi / points), inv_et);
    }
    return acc;
}

namespace {

struct Split {
    std::vector<cplx> prefix;  // polyline from 0 to Q
    std::vector<PathPiece> tail;
    cplx Q;
};

// First exit of the path from the disc |u| <= R.
Split split_at_radius(const PathSpec& P, double R) {
    Split s;
    s.prefix.push_back(0.0);
    for (std::size_t i = 0; i < P.pieces.size(); ++i) {
        const PathPiece& p = P.pieces[i];
        cplx z0 = piece_start(p);
        cplx d;
        double len;
        if (const auto* seg = std::get_if<Segment>(&p)) {
            d = seg->z1 - seg->z0;
            len = 1.0;
        } else if (std::get_if<HorizontalHalfline>(&p)) {
            d = -1.0;
            len = INFINITY;
        } else if (const auto* r = std::get_if<RadialHalfline>(&p)) {
            d = std::polar(1.0, r->angle);
            len = INFINITY;
        } else {
            throw DomainError("pole_aware_difference: arcs are not supported in the compared paths");
        }
        // |z0 + x d|^2 = R^2, largest root.
        double a = std::norm(d), b = 2.0 * (z0 * std::conj(d)).real(), c = std::norm(z0) - R * R;
        double disc = b * b - 4 * a * c;
        if (disc >= 0.0) {
            double x = (-b + std::sqrt(disc)) / (2 * a);
            if (x >= 0.0 && x <= len) {
                s.Q = z0 + x * d;
                s.prefix.push_back(s.Q);
                if (std::get_if<Segment>(&p)) {
                    if (x < 1.0) s.tail.push_back(Segment{s.Q, z0 + d});
                } else if (std::get_if<HorizontalHalfline>(&p)) {
                    s.tail.push_back(HorizontalHalfline{s.Q});
                } else {
                    s.tail.push_back(RadialHalfline{std::get<RadialHalfline>(p).angle, std::abs(s.Q)});
                }
                for (std::size_t j = i + 1; j < P.pieces.size(); ++j) s.tail.push_back(P.pieces[j]);
                for (const auto& q : s.tail) {
                    cplx e = piece_start(q);
                    if (std::abs(e) < R * (1.0 - 1e-9)) throw DomainError("pole_aware_difference: path re-enters the disc");
                }
                return s;
            }
        }
        if (std::get_if<Segment>(&p)) s.prefix.push_back(z0 + d);
    }
    throw DomainError("pole_aware_difference: path never leaves the disc");
}

int winding_number(const std::vector<cplx>& curve, cplx p) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) total += wrap_angle(std::arg(curve[i + 1] - p) - std::arg(curve[i] - p));
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

void densify(std::vector<cplx>& out, cplx a, cplx b, int n) {
    for (int j = 1; j <= n; ++j) out.push_back(a + (b - a) * (static_cast<double>(j) / n));
}

}  // namespace

DifferenceResult pole_aware_difference(const BorelFn& w, const PathSpec& X, const PathSpec& Y, cplx eps, cplx t,
                                       const PoleAwareOptions& pa, const LaplaceOptions& opt) {
    for (cplx p : pa.poles)
        if (std::abs(p) >= pa.R) throw DomainError("pole_aware_difference: every pole must lie inside |u| < R");
    Split sx = split_at_radius(X, pa.R), sy = split_at_radius(Y, pa.R);
    double thY = std::arg(sy.Q), thX = std::arg(sx.Q);
    // Arc from Q_Y to Q_X through the side with the better kernel decay.
    double phi = std::arg(eps) + std::arg(t);
    double d1 = wrap_angle(thX - thY);
    double d2 = d1 > 0 ? d1 - 2 * kPi : d1 + 2 * kPi;
    auto min_margin = [&](double d) {
        double m = INFINITY;
        for (int j = 0; j <= 64; ++j) m = std::min(m, std::cos(thY + d * j / 64.0 - phi));
        return m;
    };
    double span = min_margin(d1) >= min_margin(d2) ? d1 : d2;
    Arc arc{pa.R, thY, thY + span};

    // Closed curve prefix_Y + arc - prefix_X.
    std::vector<cplx> curve{0.0};
    for (std::size_t i = 1; i < sy.prefix.size(); ++i) densify(curve, sy.prefix[i - 1], sy.prefix[i], 400);
    for (int j = 1; j <= 800; ++j) curve.push_back(std::polar(pa.R, thY + span * j / 800.0));
    for (std::size_t i = sx.prefix.size() - 1; i >= 1; --i) densify(curve, sx.prefix[i], sx.prefix[i - 1], 400);

    double rho = pa.loop_radius;
    if (!(rho > 0.0)) {
        rho = 10.0 * std::abs(eps * t);
        for (std::size_t i = 0; i < pa.poles.size(); ++i)
            for (std::size_t j = i + 1; j < pa.poles.size(); ++j) rho = std::min(rho, 0.5 * std::abs(pa.poles[i] - pa.poles[j]));
        for (cplx p : pa.poles) rho = std::min(rho, 0.5 * (pa.R - std::abs(p)));
    }

    cplx inv_et = 1.0 / (eps * t);
    std::vector<LaplaceResult> pieces;
    LaplaceResult tx, ty;
    bool fx = true, fy = true;
    for (const auto& p : sx.tail) {
        auto r = integrate_piece(w, p, eps, t, opt);
        tx = fx ? r : add(tx, r);
        fx = false;
    }
    for (const auto& p : sy.tail) {
        auto r = integrate_piece(w, p, eps, t, opt);
        ty = fy ? r : add(ty, r);
        fy = false;
    }
    pieces.push_back(tx);
    pieces.push_back(negate(ty));
    pieces.push_back(integrate_arc(w, arc, inv_et, opt));
    for (cplx p : pa.poles) {
        int n = winding_number(curve, p);
        if (n == 0) continue;
        Scaled full = loop_integral(w, p, rho, eps, t, pa.loop_points);
        Scaled half = loop_integral(w, p, rho, eps, t, pa.loop_points / 2);
        LaplaceResult lr;
        lr.value = full * cplx(-static_cast<double>(n));
        Scaled d = full - half;
        lr.error = d.is_zero() ? 0.0 : std::exp(d.log_abs() - lr.value.e) * std::abs(n);
        lr.piece_errors = {lr.error};
        pieces.push_back(lr);
    }
    return combine(std::move(pieces));
}

}  // namespace borelkit
