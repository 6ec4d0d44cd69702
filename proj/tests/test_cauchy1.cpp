#include "doctest.h"

#include <random>

#include "borelkit/cauchy1.hpp"
#include "borelkit/special.hpp"

using namespace borelkit;

namespace {

// Independent evaluation of the recursion straight from the formula with explicit factorials.
std::vector<cplx> reference_recursion(const ProblemSpec1& s, std::vector<cplx> w, cplx tau, cplx eps, int bmax) {
    w.resize(static_cast<std::size_t>(bmax + 1), cplx(0.0));
    cplx P = poly_eval(s.P, tau);
    for (int beta = 0; beta + s.S <= bmax; ++beta) {
        cplx total = 0.0;
        for (const auto& t : s.A) {
            cplx pre = std::pow(eps, -t.k0) * std::pow(tau, t.k0) / P * std::exp(-double(t.k2) * tau);
            cplx sum = 0.0;
            for (int b1 = 0; b1 <= beta; ++b1) {
                int b2 = beta - b1;
                sum += t.c.at(b1, eps) / factorial(b1) * w[static_cast<std::size_t>(b2 + t.k1)] / factorial(b2);
            }
            total += pre * sum * factorial(beta);
        }
        w[static_cast<std::size_t>(beta + s.S)] = total;
    }
    return w;
}

}  // namespace

TEST_CASE("empty A leaves only initial data") {
    ProblemSpec1 s;
    s.S = 2;
    auto w = recurse_w_at(s, {1.0, 2.0}, cplx(-1.0, 1.0), 0.1, 8);
    CHECK(w[0] == cplx(1.0));
    CHECK(w[1] == cplx(2.0));
    for (int b = 2; b <= 8; ++b) CHECK(w[b] == cplx(0.0));
}

TEST_CASE("geometric recursion for a constant coefficient") {
    ProblemSpec1 s;
    s.S = 1;
    s.A = {{0, 0, 0, {{cplx(0.3, 0.1)}, {}}}};
    cplx w0(1.5, -0.5);
    auto w = recurse_w_at(s, {w0}, cplx(-2.0, 3.0), 0.1, 6);
    cplx expect = w0;
    for (int b = 0; b <= 5; ++b) {
        CHECK(std::abs(w[b] - expect) < 1e-14);
        expect *= cplx(0.3, 0.1);
    }
}

TEST_CASE("recursion matches the reference implementation") {
    ProblemSpec1 s;
    s.S = 2;
    s.P = {-1.0, 1.0};
    s.A = {{1, 1, 0, {{0.5, 0.25, -0.125}, {}}}};
    cplx eps = 0.1;
    for (cplx tau : {cplx(-1.0, 0.5), cplx(-3.0, 2.0), cplx(-0.2, -4.0)}) {
        auto got = recurse_w_at(s, {tau, 0.0}, tau, eps, 12);
        auto ref = reference_recursion(s, {tau, 0.0}, tau, eps, 12);
        for (int b = 0; b <= 12; ++b) {
            CHECK(std::isfinite(std::abs(got[b])));
            CHECK(std::abs(got[b] - ref[b]) <= 1e-12 * std::max(1.0, std::abs(ref[b])));
        }
    }
    CHECK_THROWS_AS(recurse_w_at(s, {1.0, 0.0}, cplx(1.0, 0.0), eps, 6), NumericalError);
}

TEST_CASE("grid recursion, linearity and scaled values") {
    ProblemSpec1 s;
    s.S = 2;
    s.P = poly_from_roots({1.0, std::polar(1.0, 1.2), std::polar(1.0, -1.2)});
    s.A = {{0, 1, 0, {{0.2, 0.1}, {}}}, {1, 0, 1, {{0.05}, {}}}};
    auto nodes = strip_grid(worked_strip_family(1, 0.1, 0.05).h(0), -5.0, 8, 4);
    auto init0 = GridFunction::sample(DomainTag::StripH, nodes, worked_example_w(2.0));
    auto init1 = GridFunction::sample(DomainTag::StripH, nodes, [](cplx t) { return Scaled::from(t * t); });
    auto tab = recurse_w(s, {init0, init1}, 0.2, 10, 3);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    cplx alpha(U(rng), U(rng));
    auto a0 = init0, a1 = init1;
    for (auto& v : a0.values) v *= alpha;
    for (auto& v : a1.values) v *= alpha;
    auto tab2 = recurse_w(s, {a0, a1}, 0.2, 10, 1);
    for (int b = 0; b <= 10; ++b)
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            Scaled x = tab.entries[b].at(i) * alpha, y = tab2.entries[b].at(i);
            double scale = std::max(std::abs(x.m), 1e-300);
            CHECK(std::abs((x - y).m) <= 1e-12 * scale + 1e-300);
        }
    // Pointwise evaluator agrees with the grid table.
    cplx z(0.05, 0.02);
    auto f = make_w_evaluator(s, {worked_example_w(2.0), [](cplx t) { return Scaled::from(t * t); }}, 0.2, 10, z);
    for (std::size_t i = 0; i < nodes.size(); i += 5) {
        Scaled a = assemble(tab, nodes[i], z).value, b = f(nodes[i]);
        CHECK(std::abs(a.log_abs() - b.log_abs()) < 1e-10);
    }
}

TEST_CASE("assembled solution with empty A is W_S") {
    ProblemSpec1 s;
    s.S = 3;
    auto nodes = strip_grid(worked_strip_family(1, 0.1, 0.05).h(0), -3.0, 5, 3);
    std::vector<GridFunction> init;
    for (int j = 0; j < 3; ++j)
        init.push_back(GridFunction::sample(DomainTag::StripH, nodes, [j](cplx t) { return Scaled::from(std::pow(t, j + 1)); }));
    auto tab = recurse_w(s, init, 0.1, 9);
    cplx z(0.1, 0.05);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        cplx t = nodes[i];
        cplx W = t + t * t * z + t * t * t * z * z / 2.0;
        CHECK(std::abs(assemble(tab, t, z).value.value() - W) < 1e-13 * std::abs(W));
    }
}

TEST_CASE("contraction and fixed point") {
    ProblemSpec1 s;
    s.S = 2;
    s.A = {{0, 1, 0, {{0.9, 0.5, -0.3}, {}}}};
    NormParams p;
    p.delta = 0.1;
    p.sigma1 = 1.0;
    p.sigma2 = 0.5;
    p.sigma3 = 0.5;
    auto rep = contraction_check(s, p, 0.1, 1.0, 20);
    CHECK(rep.max_ratio <= 0.5);
    CHECK(rep.max_ratio > 0.0);
    CHECK_FALSE(rep.divergent);

    ProblemSpec1 empty;
    empty.S = 2;
    CHECK(contraction_check(empty, p, 0.1, 1.0, 5).max_ratio == 0.0);

    ContractionOptions opt;
    opt.nodes = strip_grid(worked_strip_family(1, 0.1, 0.05).h(0), -6.0, 10, 5);
    opt.init = {GridFunction::sample(DomainTag::StripH, opt.nodes, worked_example_w(0.5)),
                GridFunction::sample(DomainTag::StripH, opt.nodes, worked_example_w(0.5))};
    auto fp = contraction_check(s, p, 0.1, 1.0, 2, opt);
    CHECK(fp.fixed_point_residual < 1e-12);

    double d = find_contraction_delta(s, p, 0.1, 0.5, 4.0);
    CHECK(d > 0.0);
    p.delta = d;
    CHECK(contraction_check(s, p, 0.1, 1.0, 8).max_ratio <= 0.5 + 1e-9);
}

TEST_CASE("validate_spec1") {
    ProblemSpec1 s;
    s.S = 2;
    s.P = {-1.0, 1.0};
    s.A = {{0, 1, 0, {{1.0}, {}}}};
    CHECK(validate_spec1(s).ok());
    s.P = {1.0, 1.0};  // root at -1
    CHECK_FALSE(validate_spec1(s).ok());
    s.P = {-1.0, 1.0};
    s.A = {{1, 1, 0, {{1.0}, {}}}};  // S >= 1 + 2 fails
    CHECK_FALSE(validate_spec1(s).ok());
    s.A = {{0, 2, 0, {{1.0}, {}}}};
    CHECK_FALSE(validate_spec1(s).ok());
    s.A = {{0, 1, 0, {{1.0}, {}}}};
    s.xi = 2.0;
    CHECK_FALSE(validate_spec1(s, 1.0, 1.0).ok());
}

TEST_CASE("admissible constants and bounds") {
    auto c = admissible_constants(0.5, kPi / 6, 0.05, 1.0, 1, 1.0, 2.0);
    CHECK(c.delta_eta == doctest::Approx(0.5).epsilon(1e-14));
    auto c1 = admissible_constants(0.5, 0.1, 0.05, 1.0, 1, 1.0, 2.0);
    double y1 = 3 * kPi / 2 - 0.1 + 2 * kPi;
    CHECK(c1.K_mn == doctest::Approx(1.0 / std::sqrt(1.0 + y1 * y1)).epsilon(1e-14));
    double prev = 0.0;
    for (double m : {1.0, 10.0, 100.0, 1e4}) {
        double K = admissible_constants(0.5, 0.1, 0.05, m, 1, 1.0, 2.0).K_mn;
        CHECK(K > prev);
        CHECK(K < 1.0);
        prev = K;
    }
    CHECK(prev > 0.999);
    CHECK_THROWS_AS(admissible_constants(0.5, 0.1, 0.05, 1.0, 1, 1.0, 1.0), DomainError);

    auto fam = worked_strip_family(1, 0.1, 0.05);
    auto ok = verify_admissible_bounds(worked_example_w(0.5), fam, c1);
    CHECK(ok.bounded());
    CHECK(std::isfinite(ok.I_w));
    CHECK(ok.I_w > 0.0);
    auto zero = verify_admissible_bounds([](cplx) { return Scaled{}; }, fam, c1);
    CHECK(zero.I_w == 0.0);
    auto gauss = verify_admissible_bounds([](cplx t) { return Scaled{1.0, (t * t).real()}; }, fam, c1);
    CHECK_FALSE(gauss.bounded());
}
