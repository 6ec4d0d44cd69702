#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "borelkit/asymptotics.hpp"
#include "borelkit/special.hpp"

using namespace borelkit;

namespace {

SectorSample with_halved_min(SectorSample s, const std::function<Scaled(cplx)>& f) {
    cplx m = s.eps[0];
    for (cplx e : s.eps)
        if (std::abs(e) < std::abs(m)) m = e;
    s.eps.push_back(0.5 * m);
    s.values.push_back(f(0.5 * m));
    return s;
}

std::vector<cplx> coeffs(cplx (*a)(int), int n) {
    std::vector<cplx> out;
    for (int k = 0; k < n; ++k) out.push_back(a(k));
    return out;
}

}  // namespace

TEST_CASE("ladders stay inside the subsector") {
    BoundedSector s{-0.4, 0.8, 1.0};
    auto e = sector_ladder(s, 0.5, 12, 3);
    REQUIRE(e.size() == 12);
    for (cplx z : e) {
        CHECK(std::arg(z) >= -0.4 + 0.075 * 1.2 - 1e-12);
        CHECK(std::arg(z) <= 0.8 - 0.075 * 1.2 + 1e-12);
    }
    CHECK(std::abs(e[1]) == doctest::Approx(0.5 * std::sqrt(0.5)));
    auto g = geometric_ladder(1.0, 21);
    SectorSample smp = sample_function(g, [](cplx z) { return Scaled::from(z); });
    CHECK(smp.decades() == doctest::Approx(3.0103).epsilon(1e-4));
    CHECK_THROWS_AS(geometric_ladder(1.0, 5, 1.5), DomainError);
}

TEST_CASE("extract_coeffs is exact on polynomials") {
    auto eps = geometric_ladder(0.5, 24, std::sqrt(0.5), 0.3);
    SectorSample s = sample_function(eps, [](cplx z) { return Scaled::from(1.0 + 2.0 * z - 3.0 * z * z + 0.5 * z * z * z); });
    auto r = extract_coeffs(s, 5);
    REQUIRE(r.a.size() == 6);
    CHECK(std::abs(r.a[0] - 1.0) < 1e-10);
    CHECK(std::abs(r.a[1] - 2.0) < 1e-10);
    CHECK(std::abs(r.a[2] + 3.0) < 1e-10);
    CHECK(std::abs(r.a[3] - 0.5) < 1e-10);
    CHECK(std::abs(r.a[4]) < 1e-8);
    SectorSample lin = sample_function(eps, [](cplx z) { return Scaled::from(1.0 + 2.0 * z); });
    auto q = extract_coeffs(lin, 3);
    CHECK(std::abs(q.a[0] - 1.0) < 1e-10);
    CHECK(std::abs(q.a[1] - 2.0) < 1e-10);
    CHECK(std::abs(q.a[2]) < 1e-10);
    CHECK_THROWS_AS(extract_coeffs(lin, 10), DomainError);
}

TEST_CASE("extract_coeffs recovers the Euler coefficients") {
    auto eps = geometric_ladder(0.3, 30, std::sqrt(0.5), 0.2);
    SectorSample s = sample_function(eps, euler_function);
    auto r = extract_coeffs(s, 6, 1e-1);
    REQUIRE(r.a.size() == 7);
    for (int k = 0; k <= 6; ++k) {
        INFO("k = " << k << " a = " << r.a[k]);
        CHECK(std::abs(r.a[k] - euler_coeff(k)) < 0.01 * factorial(k));
    }
}

TEST_CASE("euler_function matches quadrature") {
    for (cplx e : {cplx(0.1, 0.0), cplx(0.3, 0.2), cplx(0.02, -0.01)}) {
        double h = 1e-3;
        cplx sum = 0.0;
        for (int i = 0; i < 60000; ++i) {
            double x = (i + 0.5) * h;
            sum += std::exp(-x) / (1.0 + e * x) * h;
        }
        CHECK(std::abs(euler_function(e).value() - sum) < 1e-7);
    }
    CHECK_THROWS_AS(euler_function(-0.1), DomainError);
}

TEST_CASE("extract_coeffs on a flat function") {
    auto eps = geometric_ladder(0.2, 24, std::sqrt(0.5), 0.1);
    SectorSample s = sample_function(eps, [](cplx z) { return Scaled{1.0, -1.0 / std::abs(z)}; });
    auto r = extract_coeffs(s, 4);
    REQUIRE(r.a.size() == 5);
    for (cplx a : r.a) CHECK(std::abs(a) < 1e-8);
}

TEST_CASE("Gevrey separation") {
    auto eps = geometric_ladder(0.5, 20, std::sqrt(0.5), 0.1);
    SectorSample eu = sample_function(eps, euler_function);
    auto a_eu = coeffs(euler_coeff, 40);
    SectorSample syn = sample_function(eps, gevrey1plus_function);
    auto a_syn = coeffs(gevrey1plus_coeff, 40);
    for (int halved = 0; halved < 2; ++halved) {
        SectorSample e1 = halved ? with_halved_min(eu, euler_function) : eu;
        SectorSample s1 = halved ? with_halved_min(syn, gevrey1plus_function) : syn;
        auto g1 = gevrey_check(e1, a_eu, GevreyLevel::One);
        auto g1p = gevrey_check(e1, a_eu, GevreyLevel::OnePlus);
        auto s1p = gevrey_check(s1, a_syn, GevreyLevel::OnePlus);
        auto s1o = gevrey_check(s1, a_syn, GevreyLevel::One);
        INFO(describe(g1) << describe(g1p) << describe(s1p) << describe(s1o));
        CHECK(g1.passes);
        CHECK(g1.cls == GevreyClass::Gevrey1);
        CHECK(g1.C > 0.0);
        CHECK(g1.M > 0.0);
        CHECK_FALSE(g1p.passes);
        CHECK(s1p.passes);
        CHECK(s1p.cls == GevreyClass::Gevrey1Plus);
        CHECK(s1o.passes);  // 1+ implies 1
    }
}

TEST_CASE("Gevrey check on a convergent series") {
    auto eps = geometric_ladder(0.5, 16, std::sqrt(0.5), 0.0);
    SectorSample s = sample_function(eps, [](cplx z) { return Scaled::from(1.0 / (1.0 - z)); });
    std::vector<cplx> a(20, 1.0);
    auto g = gevrey_check(s, a, GevreyLevel::One);
    CHECK(g.passes);
    CHECK(g.M < 1.0);
    auto few = gevrey_check(s, a, GevreyLevel::One, 3);
    CHECK(few.cls == GevreyClass::Inconclusive);
    CHECK_FALSE(few.diagnostic.empty());
}

TEST_CASE("flatness classifier on constructed families") {
    auto eps = geometric_ladder(0.5, 16, std::sqrt(0.5), 0.2);
    SUBCASE("named examples") {
        auto e = flatness_classify(sample_function(eps, [](cplx z) { return Scaled{1.0, -1.0 / std::abs(z)}; }));
        CHECK(e.cls == FlatClass::ExpFlat);
        CHECK(e.M == doctest::Approx(1.0).epsilon(1e-6));
        auto s = flatness_classify(sample_function(eps, [](cplx z) {
            double x = 1.0 / std::abs(z);
            return Scaled{1.0, -x * std::log(2.0 * x)};
        }));
        CHECK(s.cls == FlatClass::SuperExpFlat);
        CHECK(s.M == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.L == doctest::Approx(2.0).epsilon(1e-6));
        auto n = flatness_classify(sample_function(eps, [](cplx z) { return Scaled::from(z * z); }));
        CHECK(n.cls == FlatClass::NotFlat);
    }
    SUBCASE("seeded draws with relative noise") {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        int correct = 0, total = 0;
        for (int draw = 0; draw < 100; ++draw) {
            double M = 0.2 + 2.8 * U(rng), L = 1.5 + 8.5 * U(rng), K = 0.5 + 1.5 * U(rng), p = 4.0 * U(rng);
            std::vector<double> noise;
            for (std::size_t j = 0; j < eps.size(); ++j) noise.push_back(1e-3 * (2.0 * U(rng) - 1.0));
            auto make = [&](int fam) {
                SectorSample s;
                s.eps = eps;
                for (std::size_t j = 0; j < eps.size(); ++j) {
                    double x = 1.0 / std::abs(eps[j]);
                    double l = fam == 0 ? -M * x : fam == 1 ? -M * x * std::log(L * x) : -p * std::log(x);
                    s.values.push_back({K * (1.0 + noise[j]), l});
                }
                return s;
            };
            auto fe = flatness_classify(make(0));
            auto fs = flatness_classify(make(1));
            auto fn = flatness_classify(make(2));
            correct += fe.cls == FlatClass::ExpFlat;
            correct += fs.cls == FlatClass::SuperExpFlat;
            correct += fn.cls == FlatClass::NotFlat;
            total += 3;
            if (fe.cls == FlatClass::ExpFlat) CHECK(fe.M == doctest::Approx(M).epsilon(1e-2));
            if (fs.cls == FlatClass::SuperExpFlat) CHECK(fs.L == doctest::Approx(L).epsilon(5e-2));
        }
        CHECK(correct == total);
    }
    SUBCASE("insufficient data is inconclusive") {
        auto narrow = geometric_ladder(0.5, 6, 0.8);
        auto f = flatness_classify(sample_function(narrow, [](cplx z) { return Scaled{1.0, -1.0 / std::abs(z)}; }));
        CHECK(f.cls == FlatClass::Inconclusive);
        auto few = flatness_classify(sample_function(geometric_ladder(0.5, 5, 0.1), [](cplx z) { return Scaled{1.0, -1.0 / std::abs(z)}; }));
        CHECK(few.cls == FlatClass::Inconclusive);
        SectorSample zeros = sample_function(eps, [](cplx) { return Scaled{}; });
        auto z = flatness_classify(zeros);
        CHECK(z.cls == FlatClass::Inconclusive);
        CHECK(z.clipped == 16);
    }
}

TEST_CASE("sample CSV round trip") {
    auto eps = geometric_ladder(0.5, 8, std::sqrt(0.5), 0.3);
    SectorSample s = sample_function(eps, [](cplx z) { return Scaled{cplx(0.3, -0.7), -1.0 / std::abs(z)}; });
    std::stringstream ss;
    write_sample_csv(ss, s);
    SectorSample r = read_sample_csv(ss);
    REQUIRE(r.eps.size() == 8);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(r.eps[j] == s.eps[j]);
        CHECK(r.values[j].m == s.values[j].m);
        CHECK(r.values[j].e == s.values[j].e);
    }
    std::stringstream four("re_eps,im_eps,re_value,im_value\n0.1,0,2,0\n");
    SectorSample f = read_sample_csv(four);
    CHECK(f.values[0].value() == cplx(2.0));
    std::stringstream bad("0.1,0,2\n");
    CHECK_THROWS_AS(read_sample_csv(bad), DomainError);
}
