#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightgap/formal.hpp"

using namespace heightgap;

TEST_CASE("w series") {
    // y^2 = x^3 + Ax + B: w = Z^3 + A Z^7 + B Z^9 + 2A^2 Z^11 + 5AB Z^13 + ...
    BigRational A = 3, B = -2;
    auto E = WeierstrassCurve::short_form(A, B);
    QSeries1 w = build_w_series(E, 14);
    CHECK(w.get(3) == 1);
    CHECK(w.get(4) == 0);
    CHECK(w.get(7) == A);
    CHECK(w.get(9) == B);
    CHECK(w.get(11) == 2 * A * A);
    CHECK(w.get(13) == 5 * A * B);
    // fixed-point property: w == f(Z, w) to the truncation order
    QSeries1 z3 = QSeries1::monomial(14, 3, 1);
    QSeries1 z = QSeries1::identity(14);
    QSeries1 rhs = z3 + (z * w * w).scaled(A) + (w * w * w).scaled(B);
    CHECK(w == rhs);
    // general-form coefficients stay integral for integral a-invariants
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    QSeries1 w37 = build_w_series(e37, 12);
    for (const auto& [d, c] : w37.coeffs()) CHECK(c.get_den() == 1);
}

TEST_CASE("group law basics and negation") {
    WeierstrassCurve E = WeierstrassCurve::short_form(2, 3);
    FormalGroupData fg = build_group_law(E, 8);
    CHECK(fg.F.get(1, 0) == 1);
    CHECK(fg.F.get(0, 1) == 1);
    CHECK(fg.F.get(0, 0) == 0);
    CHECK(fg.F == fg.F.transposed());
    // short form: i(T) = -T exactly
    CHECK(fg.neg == QSeries1::identity(8).scaled(BigRational(-1)));
    // F(T, i(T)) = 0
    QSeries1 zero = series_compose2(fg.F, QSeries1::identity(8), fg.neg);
    CHECK(zero.is_zero());
    // long form negation: i(T) = -T - a1 T^2 - ...
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    FormalGroupData fg37 = build_group_law(e37, 8);
    CHECK(fg37.neg.get(1) == -1);
    CHECK(series_compose2(fg37.F, QSeries1::identity(8), fg37.neg).is_zero());
}

TEST_CASE("mul_by_m: chain vs defining recurrence, linear term, composition law") {
    WeierstrassCurve E(0, 0, 1, -1, 0);
    FormalGroupData fg = build_group_law(E, 9);
    CHECK(mul_by_m(fg, 0).series.is_zero());
    CHECK(mul_by_m(fg, -1).series == fg.neg);
    CHECK(mul_by_m(fg, 2).series == series_compose2(fg.F, QSeries1::identity(9),
                                                    QSeries1::identity(9)));
    for (long m = 1; m <= 8; ++m) {
        QSeries1 chain = mul_by_m(fg, m).series;
        CHECK(chain == mul_by_m_recurrence(fg, m));
        CHECK(chain.get(1) == BigRational(m));
    }
    // [m] o [k] = [mk]
    std::mt19937_64 rng(9);
    for (int t = 0; t < 8; ++t) {
        long m = static_cast<long>(rng() % 11) - 5;
        long k = static_cast<long>(rng() % 11) - 5;
        QSeries1 lhs = series_compose(mul_by_m(fg, m).series, mul_by_m(fg, k).series);
        CHECK(lhs == mul_by_m(fg, m * k).series);
    }
    // homomorphism: [m](F(X,Y)) = F([m]X, [m]Y) at low order
    for (long m : {2L, 3L}) {
        QSeries2 lhs = series_compose_1into2(mul_by_m(fg, m).series, fg.F);
        // F([m]X, [m]Y): substitute via rows
        QSeries2 mX(9), mY(9);
        for (const auto& [d, c] : mul_by_m(fg, m).series.coeffs()) {
            mX.set(d, 0, c);
            mY.set(0, d, c);
        }
        // evaluate F at (mX, mY) by Horner over X-rows with 2-var powers
        QSeries2 rhs(9);
        {
            std::map<long, QSeries2> rows;
            for (const auto& [k2, v] : fg.F.coeffs()) {
                auto it = rows.try_emplace(k2.first, QSeries2(9)).first;
                it->second.set(0, k2.second, v);
            }
            long top = rows.rbegin()->first;
            for (long i = top; i >= 0; --i) {
                if (i != top) rhs = rhs * mX;
                auto it = rows.find(i);
                if (it == rows.end()) continue;
                // substitute Y -> mY in the row
                QSeries2 row(9);
                for (const auto& [k2, v] : it->second.coeffs()) {
                    QSeries2 term(9);
                    term.set(0, 0, v);
                    for (long e = 0; e < k2.second; ++e) term = term * mY;
                    row = row + term;
                }
                rhs = rhs + row;
            }
        }
        CHECK(lhs == rhs);
    }
    // reversion: [m] has a compositional inverse when m is invertible
    QSeries1 r = series_reversion(mul_by_m(fg, 3).series);
    CHECK(series_compose(mul_by_m(fg, 3).series, r) == QSeries1::identity(9));
}

TEST_CASE("fast engine matches the exact group-law route") {
    WeierstrassCurve E = WeierstrassCurve::short_form(0, 1);
    FormalGroupData fg = build_group_law(E, 12);
    auto ctx = ZpCtx::make(5, 20);
    for (long m : {2L, 3L, 5L, 7L}) {
        ZpSeries fast = zp_mul_series(E, m, ctx, 12);
        QSeries1 exact = mul_by_m(fg, m).series;
        for (long i = 0; i < 12; ++i) {
            BigInt expect = exact.get(i).get_num();  // integral for integral curves
            CHECK(exact.get(i).get_den() == 1);
            BigInt diff = (fast[i] - expect) % ctx->M;
            CHECK(diff % ctx->M == 0);
        }
    }
}

TEST_CASE("supersingular index") {
    // supersingular at 5 (j = 0 reduction, so flagged exceptional): index 25
    auto E = WeierstrassCurve::short_form(0, 1);
    auto idx = supersingular_index(E, 5, 27);
    CHECK(idx.index == 25);
    CHECK(idx.exceptional_j);
    // ordinary at 5: index 5
    auto Eord = WeierstrassCurve::short_form(1, 0);
    auto idx2 = supersingular_index(Eord, 5, 9);
    CHECK(idx2.index == 5);
    // truncation too short on a supersingular input: indeterminate
    CHECK_THROWS_AS(supersingular_index(E, 5, 24), computation_error);
    // a long-form curve goes through the short-form transform: 37a at 17
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    auto idx3 = supersingular_index(e37, 17, 17 * 17 + 2);
    CHECK(idx3.index == 17 * 17);
    CHECK(!idx3.exceptional_j);
}

TEST_CASE("alpha invariant") {
    CHECK(alpha(1, 25).value == BigRational(1, 24));
    CHECK(alpha(24, 25).value == 1);
    CHECK(alpha(599, 600).value == 1);
    CHECK_THROWS_AS(alpha(0, 25), bad_input);
}

TEST_CASE("weierstrass preparation") {
    auto pctx = PadicContext::make(5, 1, 20);
    auto I = [&](const BigInt& n) { return PadicElement::from_integer(pctx, n); };
    // f = pT + T^2 (+ zero tail): F = T^2 + pT, u = 1
    std::vector<PadicElement> f = {I(0), I(5), I(1), I(0), I(0), I(0), I(0), I(0), I(0)};
    auto res = weierstrass_prepare(f, 8);
    REQUIRE(res.s == 2);
    CHECK(res.F[0].is_zero_to_precision());
    CHECK(res.F[1].eq_to_precision(I(5)));
    CHECK(res.F[2].eq_to_precision(I(1)));
    CHECK(res.unit_head[0].eq_to_precision(I(1)));

    // recover T^2 + pT + p from u0 * (T^2 + pT + p) for a made-up unit u0
    std::mt19937_64 rng(13);
    for (int t = 0; t < 6; ++t) {
        long D = 16;
        std::vector<BigInt> u0(D + 1);
        u0[0] = 1 + 5 * static_cast<long>(rng() % 20);
        for (long i = 1; i <= D; ++i) u0[i] = static_cast<long>(rng() % 125);
        std::vector<BigInt> target = {5, 5, 1};
        std::vector<BigInt> prod(D + 3, BigInt(0));
        for (size_t i = 0; i < u0.size(); ++i)
            for (size_t j = 0; j < 3; ++j)
                if (i + j < prod.size()) prod[i + j] += u0[i] * target[j];
        std::vector<PadicElement> fin;
        for (auto& c : prod) fin.push_back(I(c));
        auto r2 = weierstrass_prepare(fin, D);
        REQUIRE(r2.s == 2);
        CHECK(r2.F[0].eq_to_precision(I(5)));
        CHECK(r2.F[1].eq_to_precision(I(5)));
        CHECK(r2.F[2].eq_to_precision(I(1)));
        CHECK(r2.accuracy >= 8);
    }

    // input with no unit coefficient is rejected
    std::vector<PadicElement> bad = {I(0), I(5), I(10), I(25)};
    CHECK_THROWS_AS(weierstrass_prepare(bad, 3), bad_input);
}

TEST_CASE("preparation accuracy model: runs with different guards agree mod p^(D/s)") {
    auto E = WeierstrassCurve::short_form(0, 1);
    auto ctx = ZpCtx::make(5, 16);
    long s = 25;
    ZpSeries f = zp_mul_series(E, 5, ctx, 16 * 25 + 4);
    ZpSeries F1 = zp_weierstrass_prepare(f, s, 8 * 25, nullptr);
    ZpSeries F2 = zp_weierstrass_prepare(f, s, 16 * 25, nullptr);
    long min_agree = 99;
    for (long i = 0; i <= s; ++i) {
        BigInt d = (F1[i] - F2[i]) % ctx->M;
        if (d < 0) d += ctx->M;
        if (d == 0) continue;
        BigInt m = d;
        long v = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ctx->p.get_mpz_t()));
        min_agree = std::min(min_agree, v);
    }
    CHECK(min_agree >= 8);  // N'(D1) = D1/s = 8
}

TEST_CASE("tower level 1 structure at p = 5") {
    TowerOptions opt;
    opt.target_precision = 12;
    auto pf = eisenstein_tower(WeierstrassCurve::short_form(0, 1), 5, 1, opt);
    CHECK(pf.s == 25);
    REQUIRE(pf.levels.size() == 1);
    CHECK(pf.levels[0].degree == 24);
    CHECK(pf.levels[0].g.front().valuation() == Valuation::of(1));
    REQUIRE(pf.polygon.segments.size() == 1);
    CHECK(pf.polygon.segments[0].root_valuation == BigRational(1, 24));
    CHECK(pf.polygon.zero_root_count == 1);
    auto tv = torsion_valuations(pf);
    REQUIRE(tv.size() == 1);
    CHECK(tv[0].valuation == BigRational(1, 24));
    CHECK(tv[0].multiplicity == 24);
    // ordinary input rejected
    CHECK_THROWS_AS(eisenstein_tower(WeierstrassCurve::short_form(1, 0), 5, 1, opt), bad_input);
    // beyond the cap
    CHECK_THROWS_AS(eisenstein_tower(WeierstrassCurve::short_form(0, 1), 5, 3, opt), bad_input);
}
