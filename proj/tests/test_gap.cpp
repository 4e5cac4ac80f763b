#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heightgap/gap.hpp"

using namespace heightgap;

TEST_CASE("formula evaluator") {
    std::vector<DerivationEntry> env = {{"p", "(input)", 5.0}, {"d", "(input)", 1.0}};
    CHECK(eval_formula("p^2", env) == 25.0);
    CHECK(eval_formula("10*p^4", env) == 6250.0);
    CHECK(eval_formula("min(3, 1+1, 7)", env) == 2.0);
    CHECK(eval_formula("log(p)/p", env) == doctest::Approx(std::log(5.0) / 5));
    CHECK(eval_formula("2^3^1", env) == 8.0);
    CHECK(eval_formula("-p + 6", env) == 1.0);
    CHECK_THROWS_AS(eval_formula("unknown_name", env), bad_input);
    CHECK_THROWS_AS(eval_formula("1 +", env), bad_input);
}

TEST_CASE("unramified gap") {
    GapParams p115{1, 1, 5};
    double g = unramified_gap(p115);
    CHECK(g == doctest::Approx(std::log(2.5) / 26).epsilon(1e-14));
    // vacuous bound rejected: p^f <= 2^d
    CHECK_THROWS_AS(unramified_gap(GapParams{3, 1, 5}), bad_input);
    CHECK_THROWS_AS(unramified_gap(GapParams{1, 1, 4}), bad_input);  // p must be prime >= 5
    // the bound stays positive whenever p^f > 2^d; w = p^{2f} in the
    // denominator dominates, so the bound is not monotone in f
    for (long f = 1; f <= 4; ++f) CHECK(unramified_gap(GapParams{1, f, 5}) > 0);
}

TEST_CASE("Q(n)") {
    CHECK(Q_of_n(1, 25) == 600);
    CHECK(Q_of_n(2, 25) == 25);
    CHECK(Q_of_n(7, 25) == 25);
    CHECK_THROWS_AS(Q_of_n(0, 25), bad_input);
}

TEST_CASE("thm01 constants") {
    GapReport r = thm01_constants(GapParams{1, 1, 5}, 0.2);
    CHECK(r.C1 == 6250.0);
    double b1 = std::log(5.0) / (2 * std::pow(5.0, 8));
    double b2 = std::log(5.0 / 2.0) / (25.0 * 24 * 26);
    CHECK(r.c2 == doctest::Approx(std::min(b1, b2)).epsilon(1e-14));
    CHECK(r.C2 == r.c2 / 5);
    CHECK(r.final_C > 0);
    CHECK(r.final_C <= 1.0);
    // every derivation entry re-evaluates to exactly its recorded value
    for (size_t i = 0; i < r.derivation.size(); ++i) {
        if (r.derivation[i].formula == "(input)") continue;
        std::vector<DerivationEntry> env(r.derivation.begin(), r.derivation.begin() + i);
        CHECK(eval_formula(r.derivation[i].formula, env) == r.derivation[i].value);
    }
    // below the prime floor: warning recorded (2^{1+2} = 8 > 5)
    CHECK(!r.warnings.empty());
    GapReport r13 = thm01_constants(GapParams{1, 1, 13}, 0.2);
    CHECK(r13.warnings.empty());
    // positive and decreasing in p at d = f = 1
    double prev = 1e9;
    for (long p : {5L, 7L, 11L, 13L}) {
        GapReport rp = thm01_constants(GapParams{1, 1, p}, 0.2);
        CHECK(rp.final_C > 0);
        CHECK(rp.final_C < prev);
        prev = rp.final_C;
    }
    CHECK_THROWS_AS(thm01_constants(GapParams{1, 1, 5}, 0.0), bad_input);
}

TEST_CASE("frey rhs") {
    CHECK(frey_rhs(1.0, 0.25) == 1024.0);
    CHECK(frey_rhs(0.0, 0.3) == 0.0);
    CHECK(frey_rhs(16.0, 0.25) == doctest::Approx(1024.0 * 2.0));
    CHECK_THROWS_AS(frey_rhs(1.0, 0.5), bad_input);
    CHECK_THROWS_AS(frey_rhs(1.0, 0.0), bad_input);
    CHECK_THROWS_AS(frey_rhs(-1.0, 0.25), bad_input);
}

TEST_CASE("final algebra step of the main proof, on a grid") {
    // for h <= 1:  h + 4^5 C1^{1/4} h^{1/4} >= C2  implies  h >= C2^4/(1+4^5 C1^{1/4})^4
    double C1 = 6250.0;
    double C2 = thm01_constants(GapParams{1, 1, 5}, 0.2).C2;
    double K = std::pow(4.0, 5) * std::pow(C1, 0.25);
    double floor_h = std::pow(C2, 4) / std::pow(1 + K, 4);
    for (int i = 0; i <= 10000; ++i) {
        double h = i / 10000.0;
        if (h + K * std::pow(h, 0.25) >= C2) {
            // the implication h >= floor_h must hold
            if (h < floor_h) FAIL("implication fails at h = " << h);
        }
    }
}

TEST_CASE("thm02 constants") {
    EllipticGapReport r = thm02_constants(GapParams{1, 1, 5}, 1);
    CHECK(r.amplification == BigInt(374400000));
    CHECK(r.local_gap == doctest::Approx(std::log(5.0) / 31250).epsilon(1e-14));
    CHECK(r.epsilon > 0);
    EllipticGapReport r7 = thm02_constants(GapParams{1, 1, 7}, 1);
    CHECK(r7.amplification == BigInt(40) * BigInt(2401) * BigInt(50) * BigInt(48) * BigInt(48));
}

TEST_CASE("galois orbit floor") {
    CHECK(galois_orbit_floor(5).factor == BigRational(1, 625));
    CHECK(galois_orbit_floor(7).factor == BigRational(1, 2401));
    CHECK(galois_orbit_floor(7).factor < galois_orbit_floor(5).factor);
    CHECK(!galois_orbit_floor(5).justification.empty());
}

TEST_CASE("tower prediction and Herbrand functions") {
    TowerPrediction t1 = tower_prediction(1, 5);
    CHECK(t1.degree == 24);
    REQUIRE(t1.breaks.size() == 1);
    CHECK(t1.breaks[0].interval_lo == 1);
    CHECK(t1.breaks[0].interval_hi == 24);
    TowerPrediction t2 = tower_prediction(2, 5);
    CHECK(t2.degree == 600);
    REQUIRE(t2.breaks.size() == 2);
    CHECK(t2.breaks[0].interval_lo == 1);
    CHECK(t2.breaks[0].interval_hi == 24);
    CHECK(t2.breaks[1].interval_lo == 25);
    CHECK(t2.breaks[1].interval_hi == 624);
    CHECK(t2.group_shape == "Z/24 x (Z/5)^2");
    // phi is increasing, piecewise linear, with psi its exact inverse
    for (long k = 0; k <= 50; ++k) {
        BigRational u(3 * k, 2);
        u.canonicalize();
        CHECK(t2.herbrand.psi(t2.herbrand.phi(u)) == u);
        CHECK(t1.herbrand.psi(t1.herbrand.phi(u)) == u);
    }
    // slopes: 1/(q-1) then 1/(q(q-1))
    REQUIRE(t2.herbrand.slopes.size() == 2);
    CHECK(t2.herbrand.slopes[0] == BigRational(1, 24));
    CHECK(t2.herbrand.slopes[1] == BigRational(1, 600));
    // relative level: identity below the break (the App-B anchor)
    HasseHerbrand rel = herbrand_relative_level(2, 25);
    CHECK(rel.phi(BigRational(100)) == BigRational(100));
    CHECK(rel.phi(BigRational(624)) == BigRational(624));
    CHECK(rel.psi(BigRational(624)) == BigRational(624));
    CHECK(rel.phi(BigRational(649)) == BigRational(625));
    CHECK(rel.psi(BigRational(625)) == BigRational(649));
}
