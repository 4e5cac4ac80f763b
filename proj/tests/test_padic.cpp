#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "heightgap/newton_polygon.hpp"
#include "heightgap/padic.hpp"

using namespace heightgap;

TEST_CASE("padic ring basics") {
    auto ctx = PadicContext::make(5, 1, 10);
    auto I = [&](long n) { return PadicElement::from_integer(ctx, n); };
    CHECK((I(6) * I(4)).eq_to_precision(I(24)));
    CHECK((I(5) * I(7)).valuation() == Valuation::of(1));  // v(p*u) = 1
    CHECK(I(250).valuation() == Valuation::of(3));
    CHECK(I(0).is_zero_to_precision());
    // geometric series oracle: (1 - p)^{-1} = 1 + p + p^2 + ... mod p^N
    PadicElement inv = I(1 - 5).inverse();
    BigInt geo = 0;
    for (long k = 0; k < 10; ++k) geo += pow_int(5, k);
    CHECK(inv.eq_to_precision(PadicElement::from_integer(ctx, geo)));
    CHECK(inv.valuation() == Valuation::of(0));
}

TEST_CASE("precision contraction: (a+b)-b = a to the contracted precision") {
    std::mt19937_64 rng(3);
    auto ctx = PadicContext::make(7, 1, 12);
    for (int i = 0; i < 400; ++i) {
        long va = static_cast<long>(rng() % 4);
        long vb = static_cast<long>(rng() % 4);
        PadicElement a = PadicElement::from_unit(ctx, va, {BigInt(1 + rng() % 48)}, 12);
        PadicElement b = PadicElement::from_unit(ctx, vb, {BigInt(1 + rng() % 48)}, 12);
        PadicElement lhs = (a + b) - b;
        CHECK(lhs.eq_to_precision(a));
    }
}

TEST_CASE("division and errors") {
    auto ctx = PadicContext::make(5, 1, 6);
    auto I = [&](long n) { return PadicElement::from_integer(ctx, n); };
    CHECK((I(10) / I(2)).eq_to_precision(I(5)));
    CHECK((I(1) / I(5)).valuation() == Valuation::of(-1));
    CHECK_THROWS_AS(I(3) / PadicElement::zero(), bad_input);
    // zero-to-precision divisor signals precision exhaustion
    PadicElement z = PadicElement::inexact_zero(ctx, 6);
    CHECK_THROWS_AS(I(3) / z, computation_error);
    // pending integers adopt the context of the other operand
    PadicElement six = PadicElement(3) * I(2);
    CHECK(six.eq_to_precision(I(6)));
}

TEST_CASE("unramified extension arithmetic f = 2") {
    auto ctx = PadicContext::make(5, 2, 8);
    // a = generator: unit polynomial x
    PadicElement a = PadicElement::from_unit(ctx, 0, {BigInt(0), BigInt(1)}, 8);
    PadicElement one = PadicElement::from_integer(ctx, 1);
    CHECK((a * a.inverse()).eq_to_precision(one));
    // x^2 = -2 modulo the modulus x^2 + 2 of F_25 lifted
    PadicElement sq = a * a;
    CHECK(sq.eq_to_precision(PadicElement::from_integer(ctx, -2)));
}

TEST_CASE("newton polygon: basic shapes") {
    // X^2 + pX + p: v-list [(0,1),(1,1),(2,0)] -> single slope 1/2 length 2
    auto np = newton_polygon({{0, 1}, {1, 1}, {2, 0}});
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].root_valuation == BigRational(1, 2));
    CHECK(np.segments[0].length == 2);
    CHECK(np.zero_root_count == 0);

    // Eisenstein of degree q-1 = 24: single slope 1/24
    std::vector<std::pair<long, BigRational>> pts{{0, 1}, {24, 0}};
    for (long i = 1; i < 24; ++i) pts.push_back({i, 2});
    auto np2 = newton_polygon(pts);
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].root_valuation == BigRational(1, 24));
    CHECK(np2.segments[0].length == 24);

    // X (X^2 + pX + p): zero root split out
    auto np3 = newton_polygon({{1, 1}, {2, 1}, {3, 0}});
    CHECK(np3.zero_root_count == 1);
    REQUIRE(np3.segments.size() == 1);
    CHECK(np3.segments[0].root_valuation == BigRational(1, 2));
    CHECK(np3.segments[0].length == 2);

    CHECK_THROWS_AS(newton_polygon({}), bad_input);
}

namespace {
// polygon of an integer polynomial via exact coefficient valuations
NewtonPolygon polygon_of(const std::vector<BigInt>& poly, long p) {
    std::vector<std::pair<long, BigRational>> pts;
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        pts.emplace_back(static_cast<long>(i), BigRational(vp_int(poly[i], p).value()));
    }
    return newton_polygon(std::move(pts));
}

std::vector<std::pair<BigRational, long>> slope_multiset(const NewtonPolygon& np) {
    std::vector<std::pair<BigRational, long>> v;
    for (const auto& s : np.segments) v.emplace_back(s.root_valuation, s.length);
    return v;
}
}  // namespace

TEST_CASE("polygon invariances: unit scaling and products") {
    std::mt19937_64 rng(17);
    long p = 5;
    auto random_poly = [&](int deg) {
        std::vector<BigInt> f(deg + 1);
        for (int i = 0; i <= deg; ++i) {
            long unit = 1 + static_cast<long>(rng() % 9);
            if (unit % p == 0) ++unit;
            f[i] = BigInt(unit) * pow_int(p, rng() % 4);
        }
        return f;
    };
    auto mul = [](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
        std::vector<BigInt> r(a.size() + b.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_poly(2 + rng() % 3);
        auto g = random_poly(2 + rng() % 3);
        // scaling by the unit 3 leaves the polygon unchanged
        auto f3 = f;
        for (auto& c : f3) c *= 3;
        CHECK(slope_multiset(polygon_of(f, p)) == slope_multiset(polygon_of(f3, p)));
        // slope multiset of a product = union of the factors' multisets
        auto mf = slope_multiset(polygon_of(f, p));
        auto mg = slope_multiset(polygon_of(g, p));
        auto mfg = slope_multiset(polygon_of(mul(f, g), p));
        std::map<BigRational, long> expect, got;
        for (auto& [v, l] : mf) expect[v] += l;
        for (auto& [v, l] : mg) expect[v] += l;
        for (auto& [v, l] : mfg) got[v] += l;
        CHECK(expect == got);
    }
}
