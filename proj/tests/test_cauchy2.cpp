#include "doctest.h"

#include <random>

#include "borelkit/cauchy2.hpp"
#include "borelkit/special.hpp"

using namespace borelkit;

TEST_CASE("tahara coefficients") {
    CHECK(tahara_coeffs_exact(1).empty());
    CHECK(tahara_coeffs_exact(2) == std::vector<std::int64_t>{-2});
    CHECK(tahara_coeffs_exact(3) == std::vector<std::int64_t>{6, -6});
    for (int l1 = 1; l1 <= 5; ++l1)
        for (int m = 0; m <= 12; ++m) CHECK(tahara_rhs_on_monomial(l1, m) == falling_factorial(m, l1));
    CHECK_THROWS_AS(tahara_coeffs_exact(0), DomainError);
}

TEST_CASE("beta kernel on L-shape and sector") {
    auto fam = worked_strip_family(1, 0.1, 0.05);
    LShape dom = make_lshape(fam.h(0), -0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto one = [](cplx) { return cplx(1.0); };
    for (int trial = 0; trial < 20; ++trial) {
        cplx tau;
        do {
            tau = cplx(-5.0 * U(rng), fam.h(0).im_lo + (fam.h(0).im_hi - fam.h(0).im_lo) * U(rng));
        } while (std::abs(tau) > 5.0);
        for (int g0 = 0; g0 <= 8; ++g0)
            for (int g1 = 0; g0 + g1 <= 8; ++g1) {
                cplx exact = std::pow(tau, g0 + g1 + 1) * beta_fn(g0 + 1, g1 + 1);
                auto r = convolve_power_kernel(one, tau, g0, g1, dom, false);
                CHECK(std::abs(r.value - exact) <= 1e-10 * std::abs(exact));
                CHECK(r.error <= 1e-8 * std::abs(exact));
            }
    }
    UnboundedSector sd{0.3, 0.4};
    cplx tau = std::polar(4.0, 0.5);
    auto r = convolve_power_kernel(one, tau, 2, 3, sd, 0.5, false);
    CHECK(std::abs(r.value - std::pow(tau, 6) * beta_fn(3, 4)) < 1e-10 * std::pow(4.0, 6));
    CHECK_THROWS_AS(convolve_power_kernel(one, cplx(-3.0, 0.0), 0, 0, sd, 0.5, false), DomainError);
}

TEST_CASE("kernel oracles") {
    UnboundedSector sd{0.0, 0.5};
    cplx tau = -1.0;
    auto zero = convolve_power_kernel([](cplx) { return cplx(0.0); }, tau, 1, 1, sd, 2.0, false);
    CHECK(zero.value == cplx(0.0));
    // int_0^tau (tau - s) s ds = tau^3 / 6
    auto lin = convolve_power_kernel([](cplx s) { return s; }, tau, 1, 0, sd, 2.0, false);
    CHECK(std::abs(lin.value - tau * tau * tau / 6.0) < 1e-14);
    // with ds/s and s^1 the singularity disappears
    auto ds = convolve_power_kernel([](cplx s) { return s; }, tau, 0, 1, sd, 2.0, true);
    CHECK(std::abs(ds.value - tau * tau / 2.0) < 1e-14);
    CHECK_THROWS_AS(convolve_power_kernel([](cplx s) { return s; }, tau, 1, 0, sd, 2.0, true), DomainError);
}

TEST_CASE("path grid interpolation and integration") {
    cplx A(-2.0, kPi);
    PathGrid g = path_grid_Pk(A, 6.0);
    CHECK(g.nodes.size() == g.panels() * 16);
    CHECK(g.length() == doctest::Approx(std::abs(A) + 6.0));
    CHECK(std::abs(g.point(std::abs(A)) - A) < 1e-14);
    CHECK(g.breaks[1] == doctest::Approx(1e-6));
    auto f = [](cplx s) { return Scaled::from(s * std::exp(-s / 3.0)); };
    GridFunction v = g.sample(f);
    for (double lam : {0.3, 1.7, std::abs(A) + 0.25, 8.9}) {
        cplx s = g.point(lam);
        CHECK(std::abs(interpolate(g, v, lam).value() - f(s).value()) < 1e-12 * std::max(1.0, std::abs(f(s).m)));
        CHECK(g.locate(s) == doctest::Approx(lam));
    }
    CHECK_THROWS_AS(g.locate(cplx(5.0, 5.0)), DomainError);
    // int_0^u s ds = u^2 / 2 independently of the corner.
    GridFunction id = g.sample([](cplx s) { return Scaled::from(s); });
    for (std::size_t i = 5; i < g.nodes.size(); i += 37) {
        cplx u = g.nodes[i];
        Scaled r = convolve_power_kernel(g, id, i, 0, 1, true);
        CHECK(std::abs(r.value() - u * u / 2.0) < 1e-12 * std::max(1.0, std::abs(u * u)));
        Scaled mid = integrate_along(g, id, g.lambda[i] * 0.61, [](cplx) { return cplx(1.0); });
        cplx um = g.point(g.lambda[i] * 0.61);
        CHECK(std::abs(mid.value() - um * um / 2.0) < 1e-12 * std::max(1.0, std::abs(um * um)));
    }
}

namespace {

ProblemSpec2 desk2() {
    ProblemSpec2 s;
    s.S_B = 1;
    s.B = {{3, 1, 0, {{1.0}, {}}}};
    return s;
}

}  // namespace

TEST_CASE("recurse_v oracles") {
    PathGrid g = path_grid_Pk(cplx(-1.5, kPi), 3.0);
    cplx eps(0.1, 0.05);
    // Empty B leaves the forcing.
    ProblemSpec2 empty;
    empty.S_B = 2;
    CoeffTable forcing;
    for (int b = 0; b < 4; ++b)
        forcing.entries.push_back(g.sample([b](cplx t) { return Scaled::from(std::pow(t, b + 1)); }));
    auto t0 = recurse_v(empty, g, {g.zeros(), g.zeros()}, forcing, eps, 5);
    for (int b = 0; b + 2 <= 5; ++b)
        for (std::size_t i = 0; i < g.nodes.size(); i += 11)
            CHECK(t0.entries[b + 2].at(i).value() == forcing.entries[b].at(i).value());

    // B = {(3,1,0)}, v_0 = s: v_1 = eps^-2 tau int_0^tau s ds/s * s = eps^-2 tau^3 / 2.
    auto s = desk2();
    auto t1 = recurse_v(s, g, {g.sample([](cplx t) { return Scaled::from(t); })}, {}, eps, 1);
    for (std::size_t i = 0; i < g.nodes.size(); i += 7) {
        cplx tau = g.nodes[i];
        cplx expect = std::pow(eps, -2) * tau * tau * tau / 2.0;
        CHECK(std::abs(t1.entries[1].at(i).value() - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
    auto tz = recurse_v(s, g, {g.zeros()}, {}, eps, 6);
    for (const auto& e : tz.entries)
        for (std::size_t i = 0; i < e.size(); ++i) CHECK(e.at(i).is_zero());
}

TEST_CASE("companion terms from the tahara expansion") {
    // l = (5,2,0): d = 1, A_{2,1} = -2, so v_1 = eps^-3 tau (int s^2 v ds/s - 2 int (tau-s) s v ds/s).
    PathGrid g = path_grid_Pk(cplx(-1.0, 3.0), 2.0);
    ProblemSpec2 s;
    s.S_B = 1;
    s.B = {{5, 2, 0, {{1.0}, {}}}};
    cplx eps = 0.2;
    auto tab = recurse_v(s, g, {g.sample([](cplx t) { return Scaled::from(t); })}, {}, eps, 1);
    for (std::size_t i = 3; i < g.nodes.size(); i += 13) {
        cplx tau = g.nodes[i];
        cplx expect = std::pow(eps, -3) * tau * (std::pow(tau, 3) / 3.0 - 2.0 * std::pow(tau, 3) / 6.0);
        CHECK(std::abs(tab.entries[1].at(i).value() - expect) < 1e-11 * std::max(1.0, std::abs(std::pow(eps, -3) * std::pow(tau, 4))));
    }
}

TEST_CASE("recurse_v superposition and validation") {
    PathGrid g = path_grid_Pk(cplx(-1.0, kPi), 2.0, {16, 0.5, 1e-4});
    ProblemSpec2 s;
    s.S_B = 2;
    s.P = {-2.0, 1.0};
    s.B = {{3, 1, 0, {{1.0, 0.5, 0.25}, {}}}, {4, 1, 1, {{0.3}, {}}}};
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N(0.0, 1.0);
    auto rnd_fn = [&]() {
        cplx a(N(rng), N(rng)), b(N(rng), N(rng));
        return g.sample([a, b](cplx t) { return Scaled::from(a * t + b * t * t); });
    };
    std::vector<GridFunction> i1{rnd_fn(), rnd_fn()}, i2{rnd_fn(), rnd_fn()};
    CoeffTable f1, f2;
    for (int b = 0; b < 5; ++b) {
        f1.entries.push_back(rnd_fn());
        f2.entries.push_back(rnd_fn());
    }
    cplx alpha(0.7, -0.2), eps(0.3, 0.1);
    auto combo = [&](const GridFunction& a, const GridFunction& b) {
        GridFunction c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c.set(i, Scaled::from(a.at(i).value() + alpha * b.at(i).value()));
        return c;
    };
    std::vector<GridFunction> i3{combo(i1[0], i2[0]), combo(i1[1], i2[1])};
    CoeffTable f3;
    for (int b = 0; b < 5; ++b) f3.entries.push_back(combo(f1.entries[b], f2.entries[b]));
    auto r1 = recurse_v(s, g, i1, f1, eps, 6, 2), r2 = recurse_v(s, g, i2, f2, eps, 6, 3), r3 = recurse_v(s, g, i3, f3, eps, 6);
    for (int b = 0; b <= 6; ++b)
        for (std::size_t i = 0; i < g.nodes.size(); i += 5) {
            cplx x = r1.entries[b].at(i).value() + alpha * r2.entries[b].at(i).value();
            cplx y = r3.entries[b].at(i).value();
            CHECK(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
        }

    CHECK_FALSE(validate_spec2(s).ok());  // S_B = 2 < b (l0 - l1) + l2
    ProblemSpec2 ok;
    ok.S_B = 5;
    ok.b = 1.5;
    ok.B = {{3, 1, 0, {{1.0}, {}}}};
    CHECK(validate_spec2(ok).ok());
    ok.B = {{2, 1, 0, {{1.0}, {}}}};
    CHECK_FALSE(validate_spec2(ok).ok());
    ok.B = {{3, 1, 0, {{1.0}, {}}}};
    ok.P = {1.0, 1.0};
    CHECK_FALSE(validate_spec2(ok).ok());
    ok.P = {-2.0, 1.0};
    CHECK_FALSE(validate_spec2(ok, {UnboundedSector{0.0, 0.2}}).ok());
    CHECK_FALSE(validate_spec2(ok, {}, 3.0).ok());

    ProblemSpec2 sing = s;
    PathGrid g2 = make_path_grid({0.0, 4.0});
    CHECK_THROWS_AS(recurse_v(sing, g2, {g2.zeros(), g2.zeros()}, {}, eps, 3, 1, 0.05), NumericalError);
}

TEST_CASE("convolution norm scales like eps^(g0+g1+2)") {
    const int g0 = 1, g1 = 1, g2 = 8, beta = 8;
    NormParams p;
    p.sigma1 = 1.0;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
    std::vector<double> xs, ys;
    for (double ae : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
        p.eps = ae;
        double c0 = p.sigma1 * p.w.r(beta - g2) / ae;
        PathGrid g = make_path_grid({0.0, cplx(-60.0 * ae, 0.0)}, {16, 2.0 * ae, 1e-6 * ae});
        double worst = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            double ph = U(rng);
            GridFunction v = g.sample([=](cplx s) {
                return Scaled{s * (1.0 + 0.3 * std::sin(std::abs(s) / ae + ph)), c0 * std::abs(s)};
            });
            GridFunction out = g.zeros();
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                out.set(i, convolve_power_kernel(g, v, i, g0, g1, false) * g.nodes[i]);
            double ratio = weighted_norm(out, beta, NormKind::EG, p).log_value -
                           weighted_norm(v, beta - g2, NormKind::EG, p).log_value;
            worst = trial == 0 ? ratio : std::max(worst, ratio);
        }
        xs.push_back(std::log(ae));
        ys.push_back(worst);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    double slope = sxy / sxx;
    CHECK(std::abs(slope - (g0 + g1 + 2)) < 0.2);
}
