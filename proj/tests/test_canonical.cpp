#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heightgap/canonical.hpp"

using namespace heightgap;

namespace {
CurvePoint pt(long x, long y) { return CurvePoint::affine(BigRational(x), BigRational(y)); }
}

TEST_CASE("naive height") {
    CHECK(naive_height(CurvePoint::infinity()).value == 0.0);
    CHECK(naive_height(pt(2, 1)).value == doctest::Approx(std::log(2.0) / 2));
    CHECK(naive_height(CurvePoint::affine(BigRational(3, 2), BigRational(0))).value ==
          doctest::Approx(std::log(3.0) / 2));
}

TEST_CASE("doubling estimate") {
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    auto est = canonical_height_doubling(e37, pt(0, 0), 12, 1e-10);
    CHECK(est.value == doctest::Approx(0.0255557041).epsilon(1e-5));
    CHECK(est.tail_bound < 1e-7);
    // torsion hits O and gives exactly zero
    auto em = WeierstrassCurve::short_form(-1, 0);
    auto t = canonical_height_doubling(em, pt(0, 0), 10, 1e-10);
    CHECK(t.value == 0.0);
    // [2]P has 4x the height
    auto est2 = canonical_height_doubling(e37, point_mul(e37, pt(0, 0), 2), 12, 1e-10);
    CHECK(est2.value == doctest::Approx(4 * est.value).epsilon(1e-4));
    CHECK_THROWS_AS(canonical_height_doubling(e37, pt(5, 5), 8, 1e-9), bad_input);
}

TEST_CASE("good-reduction local heights") {
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    // integral x: 0
    CHECK(local_height_good_reduction(e37, pt(0, 0), 5).value == 0.0);
    // x = a/p^2: log p ; x = a/p^4: 2 log p  (formula scaling)
    WeierstrassCurve E = WeierstrassCurve::short_form(1, 1);
    // [2](0,1) = (1/4, -9/8): v_2(x) = -2
    CurvePoint P2 = point_mul(E, pt(0, 1), 2);
    REQUIRE(P2.x() == BigRational(1, 4));
    // 2 is a bad prime for this curve, so ask at a good prime with a synthetic point:
    // use the formula directly through vp on 37a multiples
    WeierstrassCurve e(0, 0, 1, -1, 0);
    CurvePoint Q = point_mul(e, pt(0, 0), 5);  // x = 1/4
    REQUIRE(Q.x().get_den() == 4);
    CHECK(local_height_good_reduction(e, Q, 2).value == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(local_height_good_reduction(e, pt(0, 0), 37), bad_input);  // bad reduction
}

TEST_CASE("uniformize") {
    // j = 1728 curve: square lattice, tau = i, q = e^{-2pi}
    auto E = WeierstrassCurve::short_form(1, 0);
    Uniformization u = uniformize(E);
    CHECK(std::abs(u.tau - std::complex<double>(0, 1)) < 1e-9);
    CHECK(std::abs(u.q) == doctest::Approx(std::exp(-2 * M_PI)).epsilon(1e-10));
    CHECK(std::abs(u.q) < 1);
    // j cross-check on a handful of curves (both discriminant signs)
    for (auto E2 : {WeierstrassCurve(0, 0, 1, -1, 0), WeierstrassCurve(0, 1, 1, -2, 0),
                    WeierstrassCurve::short_form(1, 1), WeierstrassCurve::short_form(-4, 4),
                    WeierstrassCurve::short_form(0, 1)}) {
        Uniformization u2 = uniformize(E2);
        CHECK(std::abs(u2.q) < 1);
        double jE = to_double(E2.j_invariant());
        CHECK(std::abs(j_from_q(u2.q) - std::complex<double>(jE, 0)) <
              1e-8 * std::max(1.0, std::fabs(jE)));
    }
}

TEST_CASE("wp and elliptic log") {
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    Uniformization u = uniformize(e37);
    // wp at the three half periods gives the cubic's roots; the largest is e1
    double m = -1e300;
    for (auto hp : {u.omega1 / 2.0, u.omega2 / 2.0, (u.omega1 + u.omega2) / 2.0})
        m = std::max(m, wp_value(u, hp).real());
    CHECK(m == doctest::Approx(u.e1).epsilon(1e-8));
    for (auto P : {pt(0, 0), pt(1, 0), pt(2, 2), pt(-1, -1)}) {
        auto z = elliptic_log(e37, u, P);
        double X = to_double(P.x() + e37.b2() / 12);
        CHECK(std::abs(wp_value(u, z) - std::complex<double>(X, 0)) < 1e-7 * std::max(1.0, std::fabs(X)));
    }
}

TEST_CASE("archimedean local height") {
    WeierstrassCurve Ei = WeierstrassCurve::short_form(1, 0);
    Uniformization u = uniformize(Ei);
    // z = 1/2 (2-torsion direction) on the square lattice: finite, fast series
    double v = lambda_arch_normalized(u.tau, std::complex<double>(0.5, 0));
    CHECK(std::isfinite(v));
    // evenness to 1e-10 at random points
    std::mt19937_64 rng(41);
    for (int i = 0; i < 40; ++i) {
        double x = (1 + static_cast<double>(rng() % 997)) / 1000.0;
        double y = (1 + static_cast<double>(rng() % 997)) / 1000.0;
        std::complex<double> z = x + y * u.tau;
        double a = lambda_arch_normalized(u.tau, z);
        double b = lambda_arch_normalized(u.tau, -z);
        CHECK(std::fabs(a - b) < 1e-10);
    }
    CHECK_THROWS_AS(lambda_arch_normalized(u.tau, std::complex<double>(0, 0)), bad_input);
    CHECK(b2_polynomial(BigRational(0)) == BigRational(1, 6));
    CHECK(b2_polynomial(BigRational(1)) == BigRational(1, 6));
    CHECK(b2_polynomial(BigRational(1, 2)) == BigRational(-1, 12));
}

TEST_CASE("multiplicative-reduction formula evaluator") {
    // ratio 1/2, v(1-q0) = 0: lambda/log p = (1/2) b2(1/2) v(q_v) = -v(q_v)/24
    auto m = local_height_mult_formula(BigRational(1), BigRational(2), BigRational(0));
    CHECK(m.lambda_over_logp == BigRational(-1, 12));
    CHECK(m.lower_bound_over_logp == m.lambda_over_logp);
    // endpoint agreement b2(0) = b2(1): ratio -> 1 equals the 0+ limit value shape
    auto a = local_height_mult_formula(BigRational(1), BigRational(1), BigRational(0));
    auto b = local_height_mult_formula(BigRational(1, 1000000), BigRational(1), BigRational(0));
    CHECK(a.lambda_over_logp == BigRational(1, 12));
    CHECK(b.lambda_over_logp < BigRational(1, 12));  // approaches b2(0)/2 = 1/12 from below
    // (4.4.4): with v(1-q0) >= 0 the value dominates the b2 term
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        BigRational vq0(1 + static_cast<long>(rng() % 10), 1 + static_cast<long>(rng() % 10));
        BigRational vqv = vq0 * BigRational(1 + static_cast<long>(rng() % 5));
        BigRational v1m(static_cast<long>(rng() % 7));
        auto r = local_height_mult_formula(vq0, vqv, v1m);
        CHECK(!(r.lambda_over_logp < r.lower_bound_over_logp));
    }
    CHECK_THROWS_AS(local_height_mult_formula(BigRational(3), BigRational(2), BigRational(0)),
                    bad_input);
    CHECK_THROWS_AS(local_height_mult_formula(BigRational(0), BigRational(2), BigRational(0)),
                    bad_input);
}

TEST_CASE("local sum vs doubling, and the singular-reduction rejection") {
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    auto l = canonical_height_local_sum(e37, pt(0, 0));
    auto d = canonical_height_doubling(e37, pt(0, 0), 14, 1e-10);
    CHECK(std::fabs(l.value - d.value) < 1e-6);
    // the arch part plus the (1/12) v_37(disc) log 37 part
    REQUIRE(l.parts.size() >= 2);
    CHECK(!l.parts[0].prime.has_value());
    // torsion point on y^2 = x^3 - x sums to zero
    auto em = WeierstrassCurve::short_form(-1, 0);
    CHECK(std::fabs(canonical_height_local_sum(em, pt(0, 0)).value) < 1e-9);
    // (0,2) on y^2 = x^3 - 4x + 4 reduces to the singular point mod 2: rejected
    auto eb = WeierstrassCurve::short_form(-4, 4);
    CHECK_THROWS_AS(canonical_height_local_sum(eb, pt(0, 2)), bad_input);
    // but its double is fine and the methods agree
    CurvePoint P2 = point_mul(eb, pt(0, 2), 2);
    auto l2 = canonical_height_local_sum(eb, P2);
    auto d2 = canonical_height_doubling(eb, P2, 14, 1e-10);
    CHECK(std::fabs(l2.value - d2.value) < 1e-6);
}

TEST_CASE("haar integral pieces") {
    CHECK(b2_inner_integral_exact() == 0);
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    Uniformization u = uniformize(e37);
    auto res = haar_integral_check(u, 64);
    CHECK(std::fabs(res.total) < 5e-3);
    CHECK(res.b2_term == 0.0);
    REQUIRE(!res.jensen_terms.empty());
    CHECK(std::fabs(res.jensen_terms[0]) < 1e-6);
    CHECK_THROWS_AS(haar_integral_check(u, 32), bad_input);
}
