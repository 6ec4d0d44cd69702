#include "doctest.h"

#include "borelkit/scenarios.hpp"

using namespace borelkit;

TEST_CASE("difference equation residual on the default grid") {
    for (double a : {0.25, 0.5, 1.0}) {
        BfiCase c;
        c.a = a;
        auto rep = bfi_residuals(c, 4);
        CHECK(rep.rows.size() == 25);
        CHECK(rep.max_residual < 1e-8);
    }
    BfiCase c;
    cplx s = 3.0;
    cplx h3 = bfi_solve(c, s), h4 = bfi_solve(c, s + 1.0);
    CHECK(std::abs(h4 - (c.a * h3 + 1.0) / s) < 1e-8);
}

TEST_CASE("contour angle inside the window does not change the solution") {
    BfiCase c0, c1;
    c1.theta = 2.2;
    for (cplx s : {cplx(2.0, -5.0), cplx(6.0, 0.0), cplx(10.0, 5.0)})
        CHECK(std::abs(bfi_solve(c0, s) - bfi_solve(c1, s)) < 1e-12 * std::max(1.0, std::abs(bfi_solve(c0, s))));
}

TEST_CASE("invalid cases are rejected") {
    BfiCase c;
    c.theta = 0.5;
    CHECK_THROWS_AS(bfi_solve(c, 3.0), DomainError);
    BfiCase d;
    d.a = -1.0;
    CHECK_THROWS_AS(bfi_solve(d, 3.0), DomainError);
    BfiCase e;
    CHECK_THROWS_AS(bfi_solve(e, cplx(-1.0, 0.0)), DomainError);
}

TEST_CASE("leading coefficients in 1/s") {
    // h(s + 1) s = a h(s) + 1 gives h = 1/s + (a + 1)/s^2 + ...
    for (double a : {0.5, 1.0}) {
        BfiCase c;
        c.a = a;
        auto eps = geometric_ladder(0.25, 20, 0.70710678118654752, 0.3);
        auto smp = sample_function(eps, [&](cplx e) { return Scaled::from(bfi_solve(c, 1.0 / e)); });
        auto ex = extract_coeffs(smp, 3, 0.1);
        REQUIRE(ex.a.size() >= 3);
        CHECK(std::abs(ex.a[0]) < 1e-8);
        CHECK(std::abs(ex.a[1] - 1.0) < 1e-8);
        CHECK(std::abs(ex.a[2] - (a + 1.0)) < 1e-6);
    }
}

TEST_CASE("adjacent branches differ by a super-exponentially small amount") {
    BfiCase c0, c1;
    c1.n = 1;
    c1.theta = 3 * kPi;
    for (cplx s : {cplx(3.0, -1.0), cplx(5.0, 2.0)}) {
        cplx direct = bfi_solve(c1, s) - bfi_solve(c0, s);
        CHECK(std::abs(bfi_branch_difference(0.5, 0, s).value - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }
    auto eps = geometric_ladder(0.5, 16, 0.70710678118654752, 0.6);
    auto smp = sample_function(eps, [](cplx e) { return bfi_branch_difference(0.5, 0, 1.0 / e).scaled; });
    auto fit = flatness_classify(smp);
    CHECK(fit.cls == FlatClass::SuperExpFlat);
    CHECK(fit.M == doctest::Approx(std::cos(0.6)).epsilon(0.05));
}

TEST_CASE("first problem desk run") {
    auto cfg = desk_theorem1_config();
    cfg.workers = 4;
    auto rep = run_theorem1_desk(cfg);
    REQUIRE(rep.pairs.size() == 5);
    for (const auto& p : rep.pairs) {
        CAPTURE(p.name);
        CHECK(p.fit.cls == p.expected);
        CHECK(p.stable);
        CHECK(p.pass);
    }
    CHECK(rep.all_pass);
    CHECK_FALSE(rep.degenerate);
}

TEST_CASE("first problem without nonlinear terms is degenerate") {
    auto cfg = desk_theorem1_config();
    cfg.spec.A.clear();
    cfg.spec.S = 1;
    cfg.init = {"tau"};
    cfg.workers = 4;
    auto rep = run_theorem1_desk(cfg);
    CHECK(rep.degenerate);
    CHECK_FALSE(rep.all_pass);
    CHECK(rep.diagnostic.find("degenerate-flat") != std::string::npos);
}

TEST_CASE("short ladder is inconclusive") {
    auto cfg = desk_theorem1_config();
    cfg.ladder.n = 6;
    cfg.workers = 4;
    auto rep = run_theorem1_desk(cfg);
    CHECK_FALSE(rep.all_pass);
    for (const auto& p : rep.pairs) CHECK(p.fit.cls == FlatClass::Inconclusive);
    CHECK(rep.diagnostic.find("inconclusive") != std::string::npos);
}

TEST_CASE("first problem rejects bad configurations") {
    auto cfg = desk_theorem1_config();
    cfg.init = {"worked"};
    CHECK_THROWS_AS(run_theorem1_desk(cfg), DomainError);
    auto cfg2 = desk_theorem1_config();
    cfg2.init = {"worked", "nonsense"};
    CHECK_THROWS_AS(run_theorem1_desk(cfg2), DomainError);
}

TEST_CASE("second problem operator identity") {
    auto cfg = desk_theorem2_config();
    cfg.first.workers = 4;
    auto rep = run_theorem2_desk(cfg);
    REQUIRE(rep.checks.size() == 1);
    const auto& c = rep.checks[0];
    CHECK(c.d == 1);
    CHECK(c.l1 == 1);
    CHECK(c.rel_errors[0] < 1e-4);
    for (std::size_t j = 1; j < c.rel_errors.size(); ++j) CHECK(c.rel_errors[j] < c.rel_errors[j - 1]);
    CHECK(c.observed_order == doctest::Approx(4.0).epsilon(0.15));
    CHECK(rep.all_pass);
}

TEST_CASE("second problem trivial cases") {
    auto none = desk_theorem2_config();
    none.spec.B.clear();
    auto r1 = run_theorem2_desk(none);
    CHECK(r1.checks.empty());
    CHECK(r1.all_pass);
    CHECK_FALSE(r1.zero_solution);

    auto zero = desk_theorem2_config();
    zero.use_forcing = false;
    auto r2 = run_theorem2_desk(zero);
    CHECK(r2.zero_solution);
    CHECK(r2.y.is_zero());
    CHECK(r2.all_pass);
}
