#include "borelkit/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace borelkit {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

using Interval = std::pair<double, double>;

std::vector<Interval> intersect_arcs(const std::vector<Interval>& a, double lo, double hi) {
    std::vector<Interval> out;
    for (const auto& [alo, ahi] : a) {
        for (int k = -3; k <= 3; ++k) {
            double l = std::max(alo, lo + kTwoPi * k), h = std::min(ahi, hi + kTwoPi * k);
            if (l < h) out.emplace_back(l, h);
        }
    }
    return out;
}

}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

std::pair<double, double> StripFamily::hull() const {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : H) lo = std::min(lo, s.im_lo), hi = std::max(hi, s.im_hi);
    for (const auto& s : J) lo = std::min(lo, s.im_lo), hi = std::max(hi, s.im_hi);
    return {lo, hi};
}

StripFamily worked_strip_family(int n, double eta, double eta1) {
    if (n < 1) throw DomainError("worked_strip_family: n must be positive");
    StripFamily f;
    f.n = n;
    for (int k = -n; k <= n; ++k) {
        f.H.push_back({kPi / 2 + eta + kTwoPi * k, 3 * kPi / 2 - eta + kTwoPi * k, StripKind::H});
        f.J.push_back({3 * kPi / 2 - eta - eta1 + kTwoPi * (k - 1), kPi / 2 + eta + eta1 + kTwoPi * k, StripKind::J});
    }
    return f;
}

ValidationReport validate_strip_family(const StripFamily& f) {
    ValidationReport rep;
    const std::size_t want = static_cast<std::size_t>(2 * f.n + 1);
    if (f.n < 1 || f.H.size() != want || f.J.size() != want) {
        rep.add("shape", {f.n}, "expected 2n+1 H and J strips");
        return rep;
    }
    for (int k = -f.n; k <= f.n; ++k) {
        if (!(f.h(k).im_lo < f.h(k).im_hi)) rep.add("strip", {k}, "H_k has empty Im-range");
        if (!(f.j(k).im_lo < f.j(k).im_hi)) rep.add("strip", {k}, "J_k has empty Im-range");
        if (f.h(k).kind != StripKind::H || f.j(k).kind != StripKind::J) rep.add("strip", {k}, "strip kind mismatch");
    }
    if (!(f.j(0).im_lo < 0.0 && 0.0 < f.j(0).im_hi))
        rep.add("condition1", {0}, "0 not in (c_0, d_0) = (" + fmt(f.j(0).im_lo) + ", " + fmt(f.j(0).im_hi) + ")");
    for (int k = -f.n; k <= f.n; ++k) {
        const Strip& H = f.h(k);
        const Strip& J = f.j(k);
        if (!(J.im_lo < H.im_lo && H.im_lo < J.im_hi)) rep.add("condition2", {k}, "c_k < a_k < d_k fails");
        if (k < f.n) {
            const Strip& J1 = f.j(k + 1);
            if (!(J1.im_lo < H.im_hi && H.im_hi < J1.im_hi)) rep.add("condition2", {k, k + 1}, "c_{k+1} < b_k < d_{k+1} fails");
            const Strip& H1 = f.h(k + 1);
            if (!(H1.im_lo > H.im_hi)) rep.add("condition3", {k, k + 1}, "a_{k+1} > b_k fails");
            if (!(J1.im_lo > J.im_hi)) rep.add("condition3", {k, k + 1}, "c_{k+1} > d_k fails");
        } else if (!(H.im_hi > J.im_hi)) {
            rep.add("condition2", {k}, "b_n > d_n fails");
        }
    }
    return rep;
}

bool UnboundedSector::contains(cplx tau) const {
    if (tau == cplx(0.0)) return false;
    return std::abs(wrap_angle(std::arg(tau) - direction)) < half_aperture;
}

bool BoundedSector::contains(cplx z) const {
    double r = std::abs(z);
    if (!(r > 0.0 && r < radius)) return false;
    double a = std::arg(z);
    for (int k = -3; k <= 3; ++k) {
        double t = a + kTwoPi * k;
        if (t > angle_lo && t < angle_hi) return true;
    }
    return false;
}

std::vector<std::pair<double, double>> angular_intersection(const BoundedSector& a, const BoundedSector& b) {
    return intersect_arcs({{a.angle_lo, a.angle_hi}}, b.angle_lo, b.angle_hi);
}

ValidationReport validate_good_covering(const GoodCovering& g) {
    ValidationReport rep;
    const std::size_t want = static_cast<std::size_t>(2 * g.n + 1);
    if (g.n < 1 || g.hj.size() != want) {
        rep.add("shape", {g.n}, "expected 2n+1 HJ sectors");
        return rep;
    }
    if (g.s.size() < 2) {
        rep.add("shape", {static_cast<int>(g.s.size())}, "expected at least two S sectors");
        return rep;
    }
    // Sectors indexed 0..N-1: HJ sectors first (k = -n..n), then S sectors.
    std::vector<BoundedSector> all(g.hj.begin(), g.hj.end());
    all.insert(all.end(), g.s.begin(), g.s.end());
    auto name = [&](std::size_t i) {
        if (i < want) return "E_HJ^" + std::to_string(static_cast<int>(i) - g.n);
        return "E_S_d" + std::to_string(i - want);
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& s = all[i];
        if (!(s.angle_lo < s.angle_hi) || s.aperture() >= kTwoPi || !(s.radius > 0.0))
            rep.add("sector", {static_cast<int>(i)}, name(i) + " is not a proper bounded sector");
    }
    auto overlap = [&](const BoundedSector& a, const BoundedSector& b) { return !angular_intersection(a, b).empty(); };
    for (int k = -g.n; k < g.n; ++k)
        if (!overlap(g.e_hj(k), g.e_hj(k + 1)))
            rep.add("condition3.1", {k, k + 1}, "E_HJ^k and E_HJ^{k+1} do not intersect");
    for (std::size_t p = 0; p + 1 < g.s.size(); ++p)
        if (!overlap(g.s[p], g.s[p + 1]))
            rep.add("condition3.2", {static_cast<int>(p), static_cast<int>(p + 1)}, "E_S_dp and E_S_dp+1 do not intersect");
    if (!overlap(g.e_hj(-g.n), g.s.front())) rep.add("condition3.3", {-g.n, 0}, "E_HJ^-n and E_S_d0 do not intersect");
    if (!overlap(g.e_hj(g.n), g.s.back()))
        rep.add("condition3.3", {g.n, static_cast<int>(g.s.size()) - 1}, "E_HJ^n and E_S_d(iota-1) do not intersect");

    // Condition 4: angular coverage of the circle at 0.9 x the smallest radius.
    double rmin = INFINITY;
    for (const auto& s : all) rmin = std::min(rmin, s.radius);
    double probe = 0.9 * rmin;
    std::vector<Interval> arcs;
    for (const auto& s : all) {
        if (s.radius <= probe) continue;
        if (s.aperture() >= kTwoPi) {
            arcs.emplace_back(0.0, kTwoPi + 1.0);
            continue;
        }
        double lo = std::fmod(s.angle_lo, kTwoPi);
        if (lo < 0) lo += kTwoPi;
        double hi = lo + s.aperture();
        arcs.emplace_back(lo, hi);
        arcs.emplace_back(lo - kTwoPi, hi - kTwoPi);
    }
    std::sort(arcs.begin(), arcs.end());
    double reach = 0.0;
    bool covered_start = false;
    for (const auto& [lo, hi] : arcs)
        if (lo < 0.0 && hi > 0.0) covered_start = true, reach = std::max(reach, hi);
    if (!covered_start) {
        rep.add("condition4", {}, "angle 0 not covered");
    } else {
        for (const auto& [lo, hi] : arcs) {
            if (lo < 0.0) continue;
            if (reach >= kTwoPi) break;
            if (lo >= reach) {
                rep.add("condition4", {}, "coverage gap at angle " + fmt(reach) + " to " + fmt(lo));
                reach = std::max(reach, hi);
                continue;
            }
            reach = std::max(reach, hi);
        }
        if (reach < kTwoPi) rep.add("condition4", {}, "coverage gap at angle " + fmt(reach));
    }

    // Condition 5: no triple intersections.
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            auto ij = angular_intersection(all[i], all[j]);
            if (ij.empty()) continue;
            for (std::size_t k = j + 1; k < all.size(); ++k) {
                auto ijk = intersect_arcs(ij, all[k].angle_lo, all[k].angle_hi);
                if (!ijk.empty())
                    rep.add("condition5", {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)},
                            "triple intersection " + name(i) + ", " + name(j) + ", " + name(k));
            }
        }
    return rep;
}

GoodCovering example_good_covering(double radius) {
    GoodCovering g;
    g.n = 1;
    g.hj = {{3.8, 4.6, radius}, {2.3, 4.0, radius}, {1.6, 2.5, radius}};
    g.s = {{-1.9, -0.2, radius}, {-0.4, 1.75, radius}};
    return g;
}

LShape make_lshape(const Strip& strip, double upsilon) {
    if (!(upsilon < 0.0)) throw DomainError("make_lshape: upsilon must be negative");
    LShape d;
    d.strip = strip;
    d.upsilon = upsilon;
    if (strip.im_lo > 0.0) {
        d.rect_im_lo = 0.0;
        d.rect_im_hi = strip.im_hi;
    } else if (strip.im_lo < 0.0) {
        d.rect_im_lo = strip.im_lo;
        d.rect_im_hi = 0.0;
    } else {
        throw DomainError("make_lshape: strip lower edge must be nonzero");
    }
    return d;
}

cplx piece_start(const PathPiece& p) {
    if (auto s = std::get_if<Segment>(&p)) return s->z0;
    if (auto h = std::get_if<HorizontalHalfline>(&p)) return h->anchor;
    if (auto r = std::get_if<RadialHalfline>(&p)) return std::polar(r->r_lo, r->angle);
    const auto& a = std::get<Arc>(p);
    return std::polar(a.radius, a.theta0);
}

std::optional<cplx> piece_end(const PathPiece& p) {
    if (auto s = std::get_if<Segment>(&p)) return s->z1;
    if (auto a = std::get_if<Arc>(&p)) return std::polar(a->radius, a->theta1);
    return std::nullopt;
}

bool is_unbounded(const PathPiece& p) {
    return std::holds_alternative<HorizontalHalfline>(p) || std::holds_alternative<RadialHalfline>(p);
}

double unbounded_direction(const PathPiece& p) {
    if (std::holds_alternative<HorizontalHalfline>(p)) return kPi;
    if (auto r = std::get_if<RadialHalfline>(&p)) return r->angle;
    throw DomainError("unbounded_direction: piece is bounded");
}

bool path_connected(const PathSpec& p, double tol) {
    for (std::size_t i = 0; i + 1 < p.pieces.size(); ++i) {
        auto e = piece_end(p.pieces[i]);
        if (!e) return false;
        cplx s = piece_start(p.pieces[i + 1]);
        if (std::abs(*e - s) > tol * std::max(1.0, std::abs(s))) return false;
    }
    return true;
}

PathSpec build_path_Pk(cplx A_k) {
    if (A_k.real() > 0.0) throw DomainError("build_path_Pk: Re(A_k) must be nonpositive");
    PathSpec p;
    if (A_k != cplx(0.0)) p.pieces.push_back(Segment{0.0, A_k});
    p.pieces.push_back(HorizontalHalfline{A_k});
    return p;
}

cplx halfline_truncation_point(const PathPiece& p, double decay_rate, double tol) {
    if (!(decay_rate > 0.0)) throw DomainError("halfline_truncation_point: decay rate must be positive");
    double len = std::log(1.0 / tol) / decay_rate;
    if (auto h = std::get_if<HorizontalHalfline>(&p)) return h->anchor - len;
    if (auto r = std::get_if<RadialHalfline>(&p)) return std::polar(r->r_lo + len, r->angle);
    throw DomainError("halfline_truncation_point: piece is bounded");
}

PathSpec build_L0tau(cplx tau, const LShape& dom) {
    if (!dom.contains(tau)) throw DomainError("build_L0tau: tau outside the L-shaped domain");
    PathSpec p;
    cplx c;
    if (dom.in_rectangle(tau)) {
        c = 0.5 * tau;
        p.pieces.push_back(Segment{0.0, tau});
    } else {
        c = cplx(0.0, tau.imag());
        p.pieces.push_back(Segment{0.0, c});
        if (c != tau) p.pieces.push_back(Segment{c, tau});
    }
    p.c_point = c;
    // The three constraints on the corner: path inside the domain, c in the rectangle, |c| <= |tau|.
    if (!dom.in_rectangle(c) || std::abs(c) > std::abs(tau) * (1 + 1e-14))
        throw NumericalError("build_L0tau: corner point violates its constraints");
    for (const auto& piece : p.pieces) {
        const auto& s = std::get<Segment>(piece);
        for (int i = 0; i <= 16; ++i)
            if (!dom.contains(s.z0 + (s.z1 - s.z0) * (i / 16.0), 1e-9))
                throw DomainError("build_L0tau: path leaves the domain");
    }
    return p;
}

std::pair<cplx, cplx> build_h_points(double rho, double chi_k, double chi_k1, cplx eps, cplx t, const Strip* h_k,
                                     const Strip* h_k1) {
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("build_h_points: rho must lie in (0, 1)");
    double x = std::abs(eps * t);
    if (!(x < 1.0) || x == 0.0) throw DomainError("build_h_points: need 0 < |eps t| < 1");
    double re = rho * std::log(x);
    double base = std::arg(t) + std::arg(eps);
    cplx hk(re, rho * (base - chi_k));
    cplx hk1(re, rho * (base - chi_k1));
    if (h_k && !h_k->contains(hk)) throw DomainError("build_h_points: h_k not in H_k");
    if (h_k1 && !h_k1->contains(hk1)) throw DomainError("build_h_points: h_{k+1} not in H_{k+1}");
    return {hk, hk1};
}

cplx choose_Ak(const Strip& h, const BoundedSector& eps_sector, const BoundedSector& t_sector, double eta_k,
               double min_abs_re, double max_abs_re) {
    if (h.kind != StripKind::H) throw DomainError("choose_Ak: strip must be of kind H");
    if (!(eta_k > 0.0)) throw DomainError("choose_Ak: eta_k must be positive");
    if (eps_sector.aperture() >= kPi || t_sector.aperture() >= kPi)
        throw DomainError("choose_Ak: sector aperture must be below pi");
    const double m = h.mid();
    const double corners[4] = {eps_sector.angle_lo + t_sector.angle_lo, eps_sector.angle_lo + t_sector.angle_hi,
                               eps_sector.angle_hi + t_sector.angle_lo, eps_sector.angle_hi + t_sector.angle_hi};
    const double half = kPi / 2 - eta_k;
    auto feasible = [&](double x) {
        double th = std::arg(cplx(-x, m));
        for (double phi : corners)
            if (!(std::abs(wrap_angle(th - phi)) < half)) return false;
        return true;
    };
    // arg(-x + i m) is monotone in x, so the feasible set is an interval in x.
    const double xmax = 1e8;
    std::vector<double> xs;
    for (int i = 0; i <= 2000; ++i) xs.push_back(1e-4 * std::pow(xmax / 1e-4, i / 2000.0));
    int first = -1, last = -1;
    for (int i = 0; i < static_cast<int>(xs.size()); ++i)
        if (feasible(xs[static_cast<std::size_t>(i)])) {
            if (first < 0) first = i;
            last = i;
        }
    if (first < 0) throw DomainError("choose_Ak: no admissible A_k");
    auto refine = [&](double lo, double hi, bool lo_feasible) {
        for (int it = 0; it < 100; ++it) {
            double mid = std::sqrt(lo * hi);
            if (feasible(mid) == lo_feasible) lo = mid; else hi = mid;
        }
        return lo_feasible ? lo : hi;
    };
    double x;
    if (last == static_cast<int>(xs.size()) - 1) {
        double xlo = first == 0 ? xs[0] : refine(xs[static_cast<std::size_t>(first - 1)], xs[static_cast<std::size_t>(first)], false);
        x = std::max(xlo * 1.05, min_abs_re);
    } else {
        double xhi = refine(xs[static_cast<std::size_t>(last)], xs[static_cast<std::size_t>(last + 1)], true);
        x = std::min(xhi * 0.98, max_abs_re);
        if (x < min_abs_re) throw DomainError("choose_Ak: no admissible A_k with |Re| above the configured minimum");
    }
    if (!feasible(x)) throw DomainError("choose_Ak: no admissible A_k");
    return {-x, m};
}

}  // namespace borelkit
