#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "heightgap/heights.hpp"

using namespace heightgap;

TEST_CASE("weil height examples") {
    for (long n : {1L, 2L, 3L, 5L, 12L}) {
        IntPoly f(n + 1, BigInt(0));
        f[0] = -2;
        f[n] = 1;
        HeightValue h = weil_height(AlgebraicNumber(f));
        CHECK(std::fabs(h.value - std::log(2.0) / n) < 1e-10);
    }
    // rational alpha = 3/2: minpoly 2T - 3, h = log 3 (exact path)
    HeightValue h32 = weil_height(AlgebraicNumber(IntPoly{-3, 2}));
    CHECK(h32.value == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(h32.error_bound == 0);
    CHECK(weil_height_rational(BigRational(3, 2)) == doctest::Approx(std::log(3.0)));
    CHECK(weil_height_rational(BigRational(-1, 7)) == doctest::Approx(std::log(7.0)));
    // cyclotomic: height 0
    HeightValue hz = weil_height(AlgebraicNumber(IntPoly{1, 1, 1}));
    CHECK(std::fabs(hz.value) < 1e-12);
    // nonnegativity across a few inputs
    for (auto f : {IntPoly{-1, -1, 1}, IntPoly{3, 0, 0, 7}, IntPoly{1, 5, 1}})
        CHECK(weil_height(AlgebraicNumber(f)).value >= -1e-13);
}

TEST_CASE("algebraic number construction guards") {
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{-4, 0, 1}), bad_input);  // reducible (T-2)(T+2)
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{}), bad_input);
    CHECK_THROWS_AS(AlgebraicNumber(IntPoly{0, 1}), bad_input);  // zero
    IntPoly big(26, BigInt(0));
    big[0] = -2;
    big[25] = 1;
    CHECK_THROWS_AS((void)AlgebraicNumber(big), bad_input);  // beyond desk degree
    // content and sign are normalized
    AlgebraicNumber a(IntPoly{4, 0, -2});  // -2T^2 + 4 -> T^2 - 2
    CHECK(a.minpoly() == IntPoly{-2, 0, 1});
}

TEST_CASE("root of unity detection (Kronecker)") {
    CHECK(is_root_of_unity(AlgebraicNumber(IntPoly{1, 1, 1})));
    CHECK(is_root_of_unity(AlgebraicNumber(IntPoly{-1, 1})));
    CHECK(is_root_of_unity(AlgebraicNumber(IntPoly{1, 1})));
    CHECK(is_root_of_unity(AlgebraicNumber(cyclotomic(16))));
    CHECK(!is_root_of_unity(AlgebraicNumber(IntPoly{-2, 0, 1})));
    CHECK(!is_root_of_unity(AlgebraicNumber(IntPoly{-1, -1, 1})));
}

TEST_CASE("compositions") {
    AlgebraicNumber cbrt2(IntPoly{-2, 0, 0, 1}, "2^{1/3}");
    AlgebraicNumber sq = power_of(cbrt2, 2);
    CHECK(sq.minpoly() == IntPoly{-4, 0, 0, 1});
    HeightValue h1 = weil_height(cbrt2), h2 = weil_height(sq);
    CHECK(std::fabs(h2.value - 2 * h1.value) < 1e-11);
    AlgebraicNumber inv = power_of(cbrt2, -1);
    CHECK(std::fabs(weil_height(inv).value - h1.value) < 1e-11);
    // zeta * alpha keeps the height
    AlgebraicNumber zeta(IntPoly{1, 1, 1}, "zeta3");
    AlgebraicNumber za = product_of(zeta, cbrt2);
    CHECK(std::fabs(weil_height(za).value - h1.value) < 1e-10);
    // sqrt2 + sqrt3 has minpoly T^4 - 10T^2 + 1
    AlgebraicNumber s2(IntPoly{-2, 0, 1}), s3(IntPoly{-3, 0, 1});
    AlgebraicNumber s23 = sum_of(s2, s3);
    CHECK(s23.minpoly() == IntPoly{1, 0, -10, 0, 1});
    // sqrt2 * sqrt3 = sqrt6
    AlgebraicNumber p23 = product_of(s2, s3);
    CHECK(p23.minpoly() == IntPoly{-6, 0, 1});
    // scaling: 2 * 2^{1/3} has minpoly T^3 - 16
    CHECK(scale_by(cbrt2, BigRational(2)).minpoly() == IntPoly{-16, 0, 0, 1});
    // desk bound on composition degree
    IntPoly f13(14, BigInt(0));
    f13[0] = -2;
    f13[13] = 1;
    AlgebraicNumber big(f13);
    CHECK_THROWS_AS(product_of(big, s2), bad_input);
}

TEST_CASE("height law suite") {
    std::vector<AlgebraicNumber> corpus;
    corpus.emplace_back(IntPoly{-2, 0, 0, 1}, "2^{1/3}");
    corpus.emplace_back(IntPoly{-1, -1, 1}, "golden");
    corpus.emplace_back(IntPoly{-3, 2}, "3/2");
    auto rep = height_law_suite(corpus);
    CHECK(rep.all_hold());
    CHECK(!rep.checks.empty());
}

TEST_CASE("Northcott sanity: degree <= 2, bounded coefficients") {
    // count irreducible primitive minpolys of degree <= 2 with |coeffs| <= 4
    // and height < log 2, via the library path and via a direct quadratic
    // formula oracle
    const long H = 4;
    const double B = std::log(2.0) + 1e-12;
    long count_lib = 0, count_oracle = 0;
    auto consider = [&](IntPoly f) {
        ipoly_trim(f);
        if (ipoly_degree(f) < 1) return;
        if (f.back() <= 0) return;       // fix the sign representative
        if (!(ipoly_content(f) == 1)) return;  // enumerate primitives once
        if (f[0] == 0) return;
        if (!ipoly_is_irreducible(f)) return;
        double hv = weil_height(AlgebraicNumber(f)).value;
        if (hv < B) ++count_lib;
        // oracle
        double oracle;
        if (ipoly_degree(f) == 1) {
            oracle = std::log(std::max(std::fabs(f[0].get_d()), std::fabs(f[1].get_d())));
        } else {
            double a = f[2].get_d(), b = f[1].get_d(), c = f[0].get_d();
            double disc = b * b - 4 * a * c;
            double m;  // Mahler measure |a| max(1,|r1|) max(1,|r2|)
            if (disc >= 0) {
                double r1 = (-b + std::sqrt(disc)) / (2 * a), r2 = (-b - std::sqrt(disc)) / (2 * a);
                m = std::fabs(a) * std::max(1.0, std::fabs(r1)) * std::max(1.0, std::fabs(r2));
            } else {
                // complex pair of modulus sqrt(c/a)
                double mod = std::sqrt(c / a);
                m = std::fabs(a) * std::max(1.0, mod) * std::max(1.0, mod);
            }
            oracle = std::log(m) / 2;
        }
        if (oracle < B) ++count_oracle;
    };
    for (long a = -H; a <= H; ++a)
        for (long b = -H; b <= H; ++b) {
            consider(IntPoly{BigInt(a), BigInt(b)});
            for (long c = -H; c <= H; ++c) consider(IntPoly{BigInt(a), BigInt(b), BigInt(c)});
        }
    CHECK(count_lib == count_oracle);
    CHECK(count_lib > 0);
    CHECK(count_lib < 200);  // finite, small
}
