#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heightgap/exact.hpp"
#include "heightgap/fq.hpp"

using namespace heightgap;

TEST_CASE("vp_int basics") {
    CHECK(vp_int(250, 5) == Valuation::of(3));
    CHECK(vp_int(7, 5) == Valuation::of(0));
    CHECK(vp_int(0, 5).is_infinite());
    CHECK(vp_int(-50, 5) == Valuation::of(2));
    CHECK_THROWS_AS(vp_int(10, 4), bad_input);
    // divisibility property
    for (long n : {12L, 360L, -1024L, 7L}) {
        long v = vp_int(n, 2).value();
        CHECK(BigInt(n) % pow_int(2, v) == 0);
        CHECK(BigInt(n) % pow_int(2, v + 1) != 0);
    }
}

TEST_CASE("kummer valuation equals the Legendre oracle, full sweep m <= 2000") {
    for (long p : {2L, 3L, 5L, 7L}) {
        // incremental v_p(m!)
        std::vector<long> vf(2001, 0);
        for (long m = 1; m <= 2000; ++m) {
            long v = 0, mm = m;
            while (mm % p == 0) {
                mm /= p;
                ++v;
            }
            vf[m] = vf[m - 1] + v;
        }
        auto carries = [&](long m, long a) {
            long x = a, y = m - a, carry = 0, cnt = 0;
            while (x || y || carry) {
                long s = x % p + y % p + carry;
                carry = s >= p ? 1 : 0;
                cnt += carry;
                x /= p;
                y /= p;
            }
            return cnt;
        };
        for (long m = 1; m <= 2000; ++m)
            for (long a = 0; a <= m; ++a)
                if (carries(m, a) != vf[m] - vf[a] - vf[m - a]) {
                    CAPTURE(p);
                    CAPTURE(m);
                    CAPTURE(a);
                    FAIL("kummer != legendre");
                }
    }
    // the BigInt API agrees on a random subsample
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
        long m = 1 + static_cast<long>(rng() % 2000);
        long a = static_cast<long>(rng() % (m + 1));
        BigInt legendre = vp_factorial_legendre(m, p) - vp_factorial_legendre(a, p) -
                          vp_factorial_legendre(m - a, p);
        CHECK(BigInt(vp_binomial_kummer(m, a, p)) == legendre);
    }
    CHECK(vp_binomial_kummer(25, 5, 5) == 1);
    CHECK(vp_binomial_kummer(10, 5, 2) == 2);
    CHECK(vp_binomial_kummer(123, 0, 3) == 0);
    CHECK_THROWS_AS(vp_binomial_kummer(5, 7, 5), bad_input);
}

TEST_CASE("claim 2.3.17") {
    CHECK(check_claim_2_3_17(5, 1));
    CHECK(check_claim_2_3_17(5, 2));
    CHECK(check_claim_2_3_17(7, 1));
    CHECK(check_claim_2_3_17(7, 2));
    CHECK(check_claim_2_3_17(11, 1));
    CHECK(check_claim_2_3_17(11, 2));
    // Kummer gives v_p(binom(p^m, a)) = m - v_p(a), so the inequality reads
    // a - v_p(a) >= 2 (a < p^m); that holds for every p >= 3 and first
    // fails at p = 2, a = 2 -- the regression witness.
    CHECK(check_claim_2_3_17(3, 1));
    CHECK(check_claim_2_3_17(3, 2));
    auto w = claim_2_3_17_first_failure(2, 1);
    REQUIRE(w.has_value());
    CHECK(*w == 2);
    auto w3 = claim_2_3_17_first_failure(2, 3);
    REQUIRE(w3.has_value());
    CHECK(*w3 == 2);
    CHECK_THROWS_AS(check_claim_2_3_17(5, 9), bad_input);  // desk bound
}

TEST_CASE("Fq arithmetic examples") {
    auto f5 = FqField::make(5, 1);
    auto two = FqElement::from_int(f5, 2), three = FqElement::from_int(f5, 3);
    CHECK(two * three == FqElement::from_int(f5, 1));
    auto f7 = FqField::make(7, 1);
    CHECK(FqElement::from_int(f7, 3).pow(6) == FqElement::from_int(f7, 1));
    auto f25 = FqField::make(5, 2);
    // x * x^{-1} = 1 for a nonzero x of degree 2
    FqElement x = fq_from_index(f25, 7);
    CHECK(x * x.inverse() == FqElement::from_int(f25, 1));
    CHECK_THROWS_AS(FqElement::from_int(f25, 0).inverse(), bad_input);
    CHECK_THROWS_AS((void)(two + x), bad_input);  // mismatched fields
    CHECK_THROWS_AS(FqField::make(997, 3), bad_input);  // beyond desk bound
}

TEST_CASE("Fq ring laws, randomized") {
    std::mt19937_64 rng(11);
    for (auto [p, f] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 2}, {7, 3}, {13, 1}}) {
        auto F = FqField::make(p, f);
        std::uint64_t q = F->q();
        for (int i = 0; i < 1200; ++i) {
            FqElement a = fq_from_index(F, rng() % q);
            FqElement b = fq_from_index(F, rng() % q);
            FqElement c = fq_from_index(F, rng() % q);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
        }
        // Frobenius fixes exactly F_p inside F_q: x^p == x iff x scalar
        FqElement g = fq_from_index(F, 1);
        CHECK(g.pow(static_cast<long>(q)) == g);
    }
}

TEST_CASE("modulus is the lexicographically smallest irreducible") {
    // over F_5, degree 2: x^2 + 2 is the smallest (x^2, x^2+1=(x+2)(x+3), ... checked by hand)
    auto f25 = FqField::make(5, 2);
    CHECK(f25->modulus() == std::vector<std::uint64_t>{2, 0, 1});
    auto f49 = FqField::make(7, 2);
    CHECK(f49->modulus() == std::vector<std::uint64_t>{1, 0, 1});  // x^2 + 1, since -1 is not a QR mod 7
}
