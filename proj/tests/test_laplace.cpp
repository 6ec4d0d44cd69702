#include "doctest.h"

#include <random>

#include "borelkit/laplace.hpp"

using namespace borelkit;

namespace {

BorelFn fn(std::function<cplx(cplx)> f) {
    return [f](cplx u) { return Scaled::from(f(u)); };
}

PathSpec ray(double angle) {
    PathSpec p;
    p.pieces.push_back(RadialHalfline{angle, 0.0});
    return p;
}

}  // namespace

TEST_CASE("elementary transforms") {
    cplx eps = std::polar(0.1, 0.3), t = std::polar(2.0, 0.4);
    auto r = laplace_eval(fn([](cplx u) { return u; }), ray(0.5), eps, t);
    CHECK(std::abs(r.as_complex() - eps * t) < 1e-14);
    CHECK(r.abs_error() < 1e-12);

    cplx et = 0.3;
    PathSpec seg;
    seg.pieces.push_back(Segment{0.0, 2.0});
    auto s = laplace_eval(fn([](cplx u) { return u; }), seg, et, 1.0);
    CHECK(std::abs(s.as_complex() - et * (1.0 - std::exp(-2.0 / et))) < 1e-14);

    // Decay gate and origin check.
    CHECK_THROWS_AS(laplace_eval(fn([](cplx u) { return u; }), ray(0.5 + kPi), eps, t), DomainError);
    CHECK_THROWS_AS(laplace_eval(fn([](cplx) { return cplx(1.0); }), ray(0.5), eps, t), DomainError);
    LaplaceOptions o;
    o.allow_nonzero_at_origin = true;
    PathSpec unit;
    unit.pieces.push_back(Segment{0.5, 1.5});
    CHECK_NOTHROW(laplace_eval(fn([](cplx) { return cplx(1.0); }), unit, eps, t, o));
    CHECK(decay_margin(0.5, eps, t) == doctest::Approx(std::cos(-0.2)));
}

TEST_CASE("homotopy invariance on random path pairs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto w = fn([](cplx u) { return u * std::exp(-u * u); });
    for (int trial = 0; trial < 10; ++trial) {
        cplx eps = std::polar(0.05 + 0.2 * U(rng), 2.0 + 0.5 * U(rng));
        cplx t = std::polar(0.5 + U(rng), kPi - std::arg(eps) + 0.6 * (U(rng) - 0.5));
        cplx A(-3.0 * U(rng), -3.0 + 6.0 * U(rng));
        cplx B(-3.0 * U(rng), -3.0 + 6.0 * U(rng));
        auto a = laplace_eval(w, build_path_Pk(A), eps, t);
        auto b = laplace_eval(w, build_path_Pk(B), eps, t);
        CHECK(std::abs(a.as_complex() - b.as_complex()) < 1e-8);
    }
    // Pole in the right halfplane, away from the deformation region.
    auto wp = fn([](cplx u) { return u / (u - 2.0); });
    cplx eps = std::polar(0.1, 2.5), t = std::polar(1.0, kPi - 2.5);
    auto a = laplace_eval(wp, build_path_Pk(cplx(-1.0, 1.0)), eps, t);
    auto b = laplace_eval(wp, build_path_Pk(cplx(-0.5, -2.0)), eps, t);
    CHECK(std::abs(a.as_complex() - b.as_complex()) < 1e-10);
}

TEST_CASE("linearity and truncation robustness") {
    cplx eps = std::polar(0.2, 2.8), t = std::polar(0.7, kPi - 2.8 + 0.1);
    auto f = fn([](cplx u) { return u * std::exp(0.3 * u); });
    auto g = fn([](cplx u) { return std::sin(u); });
    cplx alpha(0.3, -1.1);
    auto h = fn([&](cplx u) { return u * std::exp(0.3 * u) + alpha * std::sin(u); });
    PathSpec p = build_path_Pk(cplx(-0.5, 1.0));
    auto rf = laplace_eval(f, p, eps, t), rg = laplace_eval(g, p, eps, t), rh = laplace_eval(h, p, eps, t);
    CHECK(std::abs(rf.as_complex() + alpha * rg.as_complex() - rh.as_complex()) < 1e-12);

    LaplaceOptions longer;
    longer.truncation_tol = 1e-36;  // doubles the cut length
    auto r2 = laplace_eval(f, p, eps, t, longer);
    CHECK(std::abs(r2.as_complex() - rf.as_complex()) <= rf.abs_error() + 4e-16 * std::abs(rf.as_complex()));
}

TEST_CASE("scaled values beyond double range") {
    cplx eps = std::polar(1e-3, 3.0), t = std::polar(1.0, -3.0);
    cplx et = eps * t;
    // w = e^800 u exp(-500 u): transform e^800 et / (1 + 500 et).
    BorelFn w = [](cplx u) { return Scaled{u * std::polar(1.0, -500.0 * u.imag()), 800.0 - 500.0 * u.real()}; };
    auto r = laplace_eval(w, ray(0.0), eps, t);
    cplx exact = et / (1.0 + 500.0 * et);
    CHECK(std::abs(r.value.log_abs() - 800.0 - std::log(std::abs(exact))) < 1e-12);
    CHECK(std::abs(std::arg(r.value.m) - std::arg(exact)) < 1e-12);
}

TEST_CASE("truncated laplace") {
    cplx G(-0.5, 0.2), Om(1.3, 0.4), s(2.0, 1.0), eps(0.3, 0.1);
    CHECK(truncated_laplace([](cplx) { return cplx(0.0); }, G, Om, s, eps) == cplx(0.0));
    cplx E = G * std::log(Om * s / eps), k = s / eps;
    cplx one = truncated_laplace([](cplx) { return cplx(1.0); }, G, Om, s, eps);
    CHECK(std::abs(one - (1.0 - std::exp(-k * E)) / k) < 1e-12);
    cplx lin = truncated_laplace([](cplx x) { return x; }, G, Om, s, eps);
    cplx byparts = 1.0 / (k * k) - std::exp(-k * E) * (E / k + 1.0 / (k * k));
    CHECK(std::abs(lin - byparts) < 1e-10 * std::max(1.0, std::abs(byparts)));
    CHECK_THROWS_AS(truncated_laplace([](cplx x) { return x; }, G, cplx(-1.0, 0.0), 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(truncated_laplace([](cplx x) { return x; }, cplx(0.5, 0.0), Om, s, eps), DomainError);
}

TEST_CASE("grid transform matches pointwise transform") {
    cplx A(-1.0, kPi);
    cplx eps = std::polar(0.1, 2.7), t = std::polar(0.5, kPi - 2.7 + 0.05);
    PathGrid g = path_grid_Pk(A, 4.0);
    auto f = [](cplx u) { return Scaled::from(u * std::exp(-0.5 * u * u) + u * u); };
    auto rg = laplace_on_grid(g, g.sample(f), eps, t);
    auto rp = laplace_eval(f, build_path_Pk(A), eps, t);
    CHECK(std::abs(rg.as_complex() - rp.as_complex()) < 1e-12 * std::abs(rp.as_complex()));
    CHECK(rg.abs_error() < 1e-10 * std::abs(rp.as_complex()));

    CoeffTable tab;
    tab.entries.push_back(g.sample([](cplx u) { return Scaled::from(u); }));
    tab.entries.push_back(g.sample([](cplx u) { return Scaled::from(u * u); }));
    tab.entries.push_back(g.sample([](cplx u) { return Scaled::from(u * u * u); }));
    cplx z(0.1, 0.2);
    GridFunction a = assemble_on_grid(tab, z);
    for (std::size_t i = 0; i < g.nodes.size(); i += 17) {
        cplx u = g.nodes[i];
        CHECK(std::abs(a.at(i).value() - (u + u * u * z + u * u * u * z * z / 2.0)) < 1e-13 * std::max(1.0, std::abs(u * u * u)));
    }
}

TEST_CASE("HJ difference decomposition") {
    cplx eps = std::polar(0.2, 2.9), t = std::polar(0.5, kPi - 2.9 + 0.1);
    auto w = fn([](cplx u) { return u * std::exp(-0.2 * u * u) * std::cos(u); });
    cplx hk(-1.5, 0.5), hk1(-1.5, 2.0);
    auto d = difference_decomposition(w, hk, hk1, eps, t, {}, cplx(-0.5, 0.5), cplx(-0.7, 2.0));
    REQUIRE(d.direct);
    CHECK(d.pieces.size() == 3);
    CHECK(std::abs(d.total.value() - *d.direct) < 1e-8);
    auto z = difference_decomposition(fn([](cplx) { return cplx(0.0); }), hk, hk1, eps, t);
    for (const auto& p : z.pieces) CHECK(p.value.is_zero());
    CHECK(z.total.is_zero());
}

TEST_CASE("sector difference decomposition") {
    cplx eps = std::polar(0.1, 0.1), t = std::polar(1.0, -0.1);
    auto w = fn([](cplx u) { return u * std::exp(-u * u); });
    auto same = sector_difference_decomposition(w, w, 0.8, 0.3, 0.3, eps, t);
    CHECK(std::abs(same.total.value()) < 1e-300);
    auto ent = sector_difference_decomposition(w, w, 0.8, -0.4, 0.5, eps, t, {}, true);
    CHECK(std::abs(ent.total.value() - *ent.direct) < 1e-8);

    // Pole between the rays, outside the common disc.
    cplx u0(1.5, 0.05);
    auto wp = fn([u0](cplx u) { return u / (u - u0); });
    auto pd = sector_difference_decomposition(wp, wp, 1.0, -0.5, 0.5, eps, t, {}, true);
    CHECK(std::abs(pd.total.value() - *pd.direct) < 1e-8 * std::max(1.0, std::abs(*pd.direct)));
    // Residue check: the difference equals -2 pi i Res at u0.
    cplx res = -2.0 * kPi * cplx(0.0, 1.0) * std::exp(-u0 / (eps * t));
    CHECK(std::abs(pd.total.value() - res) < 1e-10 * std::abs(res) + 1e-15);

    PoleAwareOptions pa;
    pa.R = 3.0;
    pa.poles = {u0};
    auto pw = pole_aware_difference(wp, ray(0.5), ray(-0.5), eps, t, pa);
    CHECK(std::abs(pw.total.value() - res) < 1e-9 * std::abs(res));
    // Reversed orientation flips the sign.
    auto pr = pole_aware_difference(wp, ray(-0.5), ray(0.5), eps, t, pa);
    CHECK(std::abs(pr.total.value() + res) < 1e-9 * std::abs(res));

    auto other = fn([](cplx u) { return u * 2.0; });
    CHECK_THROWS_AS(sector_difference_decomposition(w, other, 0.8, -0.4, 0.5, eps, t), DomainError);
}

TEST_CASE("pole aware difference resolves exponentially small residues") {
    // Direct subtraction loses everything once the residue is below roundoff of the transforms.
    cplx u0(1.0, 0.0);
    auto wp = fn([u0](cplx u) { return u / (u - u0); });
    cplx eps = std::polar(0.01, 0.0), t = 1.0;
    cplx res = -2.0 * kPi * cplx(0.0, 1.0) * std::exp(-u0 / (eps * t));  // ~ e^-100
    PoleAwareOptions pa;
    pa.R = 3.0;
    pa.poles = {u0};
    auto pw = pole_aware_difference(wp, ray(0.6), ray(-0.6), eps, t, pa);
    CHECK(std::abs(pw.total.log_abs() - std::log(std::abs(res))) < 1e-8);
    CHECK(std::abs(std::arg(pw.total.m) - std::arg(res)) < 1e-8);

    // Junction-type: P_k against a ray.
    cplx eps2 = std::polar(0.02, 1.6), t2 = 1.0;
    cplx p1 = std::polar(1.0, 1.2);
    auto wq = fn([p1](cplx u) { return u / (u - p1); });
    PoleAwareOptions pb;
    pb.R = 2.5;
    pb.poles = {p1};
    auto pj = pole_aware_difference(wq, build_path_Pk(cplx(-1.0, kPi)), ray(0.6), eps2, t2, pb);
    cplx res2 = 2.0 * kPi * cplx(0.0, 1.0) * std::exp(-p1 / (eps2 * t2));
    // P_k passes to the left of the pole, the ray to the right: the difference is minus the loop.
    CHECK(std::abs(pj.total.log_abs() - std::log(std::abs(res2))) < 1e-8);
}
