#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightgap/series.hpp"

using namespace heightgap;

namespace {
QSeries1 from_list(long order, std::initializer_list<long> cs) {
    QSeries1 s(order);
    long d = 0;
    for (long c : cs) s.set(d++, BigRational(c));
    return s;
}

// independent convolution oracle
QSeries1 mul_oracle(const QSeries1& a, const QSeries1& b) {
    long order = std::min(a.order(), b.order());
    QSeries1 r(order);
    for (long k = 0; k < order; ++k) {
        BigRational acc = 0;
        for (long i = 0; i <= k; ++i) acc += a.get(i) * b.get(k - i);
        r.set(k, acc);
    }
    return r;
}
}  // namespace

TEST_CASE("mul/add basics") {
    QSeries1 a = from_list(5, {1, 1});   // 1 + T
    QSeries1 b = from_list(5, {1, -1});  // 1 - T
    QSeries1 p = a * b;
    CHECK(p == from_list(5, {1, 0, -1}));
    CHECK((a * QSeries1::zero(5)).is_zero());
    CHECK((a + b) == from_list(5, {2}));

    // telescoping: (sum_{i<O} T^i)(1 - T), compared against the oracle
    long O = 9;
    QSeries1 geo(O);
    for (long i = 0; i < O; ++i) geo.set(i, 1);
    QSeries1 one_minus(O);
    one_minus.set(0, 1);
    one_minus.set(1, -1);
    CHECK(geo * one_minus == mul_oracle(geo, one_minus));
    CHECK((geo * one_minus) == from_list(O, {1}));  // the T^O tail is truncated away

    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        QSeries1 x(12), y(12);
        for (long i = 0; i < 12; ++i) {
            if (rng() % 3) x.set(i, BigRational(static_cast<long>(rng() % 19) - 9));
            if (rng() % 3) y.set(i, BigRational(static_cast<long>(rng() % 19) - 9));
        }
        CHECK(x * y == mul_oracle(x, y));
        CHECK(x * y == y * x);
    }
}

TEST_CASE("composition") {
    long O = 8;
    QSeries1 id = QSeries1::identity(O);
    QSeries1 g = from_list(O, {0, 1, 1});  // T + T^2
    CHECK(series_compose(id, g) == g);
    // T^2 o (T + T^2) = T^2 + 2 T^3 + T^4
    QSeries1 t2 = QSeries1::monomial(O, 2, 1);
    CHECK(series_compose(t2, g) == from_list(O, {0, 0, 1, 2, 1}));
    // geometric 1/(1-T) at T^2: sum T^{2k}
    QSeries1 geo(O);
    for (long i = 0; i < O; ++i) geo.set(i, 1);
    QSeries1 inner = QSeries1::monomial(O, 2, 1);
    QSeries1 comp = series_compose(geo, inner);
    QSeries1 expect(O);
    for (long k = 0; 2 * k < O; ++k) expect.set(2 * k, 1);
    CHECK(comp == expect);
    CHECK_THROWS_AS(series_compose(geo, from_list(O, {1, 1})), bad_input);
}

TEST_CASE("composition associativity, random triples") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        long O = 12;
        auto rand_series = [&](bool unit_linear) {
            QSeries1 s(O);
            for (long i = 1; i < O; ++i)
                if (i == 1 && unit_linear)
                    s.set(1, BigRational(1 + static_cast<long>(rng() % 3)));
                else if (rng() % 2)
                    s.set(i, BigRational(static_cast<long>(rng() % 7) - 3));
            return s;
        };
        QSeries1 f = rand_series(false), g = rand_series(false), h = rand_series(false);
        CHECK(series_compose(series_compose(f, g), h) ==
              series_compose(f, series_compose(g, h)));
    }
}

TEST_CASE("reversion") {
    long O = 8;
    CHECK(series_reversion(QSeries1::identity(O)) == QSeries1::identity(O));
    // g = T + T^2: reversion has the signed Catalan numbers 1, -1, 2, -5, 14, -42, 132
    QSeries1 g = from_list(O, {0, 1, 1});
    QSeries1 r = series_reversion(g);
    CHECK(r == from_list(O, {0, 1, -1, 2, -5, 14, -42, 132}));
    CHECK(series_compose(g, r) == QSeries1::identity(O));
    CHECK(series_compose(r, g) == QSeries1::identity(O));
    // involution property on random invertible series
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        QSeries1 s(10);
        s.set(1, BigRational(1 + static_cast<long>(rng() % 2) * 2));  // 1 or 3
        for (long i = 2; i < 10; ++i)
            if (rng() % 2) s.set(i, BigRational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
        CHECK(series_reversion(series_reversion(s)) == s);
    }
    CHECK_THROWS_AS(series_reversion(from_list(O, {0, 0, 1})), bad_input);
    CHECK_THROWS_AS(series_reversion(from_list(O, {1, 1})), bad_input);
}

TEST_CASE("two-variable series") {
    long O = 6;
    QSeries2 F(O);
    F.set(1, 0, 1);
    F.set(0, 1, 1);  // X + Y
    QSeries1 t = QSeries1::identity(O);
    CHECK(series_compose2(F, t, t) == from_list(O, {0, 2}));
    QSeries2 XY(O);
    XY.set(1, 1, 1);
    QSeries1 t2 = QSeries1::monomial(O, 2, 1);
    CHECK(series_compose2(XY, t, t2) == QSeries1::monomial(O, 3, 1));
    // symmetry helpers
    QSeries2 G(O);
    G.set(2, 1, BigRational(7));
    CHECK(G.transposed().get(1, 2) == 7);
    // unit inverse: (1 + X + Y)^{-1} * (1 + X + Y) = 1
    QSeries2 U(O);
    U.set(0, 0, 1);
    U.set(1, 0, 1);
    U.set(0, 1, 1);
    QSeries2 one(O);
    one.set(0, 0, 1);
    CHECK(U * U.inverse_unit() == one);
}

TEST_CASE("determinism: rerunning a pipeline gives identical maps") {
    auto build = [] {
        QSeries1 s(16);
        for (long i = 1; i < 16; ++i) s.set(i, BigRational(i * i - 3, i + 1));
        QSeries1 r = series_reversion(s.scaled(BigRational(1)) + QSeries1::monomial(16, 1, 0));
        return (r * r + r).coeffs();
    };
    CHECK(build() == build());
}
