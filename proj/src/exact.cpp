#include "heightgap/exact.hpp"

namespace heightgap {

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Valuation vp_int(const BigInt& n, const BigInt& p) {
    if (!is_prime(p)) throw bad_input("vp_int: p must be prime");
    if (n == 0) return Valuation::infinity();
    BigInt m = abs(n);
    unsigned long v = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    return Valuation::of(static_cast<long>(v));
}

Valuation vp_rational(const BigRational& x, const BigInt& p) {
    if (x == 0) return Valuation::infinity();
    Valuation vn = vp_int(x.get_num(), p);
    Valuation vd = vp_int(x.get_den(), p);
    return Valuation::of(vn.value() - vd.value());
}

long vp_binomial_kummer(const BigInt& m, const BigInt& a, const BigInt& p) {
    if (!is_prime(p)) throw bad_input("vp_binomial_kummer: p must be prime");
    if (a < 0 || a > m) throw bad_input("vp_binomial_kummer: need 0 <= a <= m");
    BigInt x = a, y = m - a;
    long carries = 0;
    BigInt carry = 0;
    while (x > 0 || y > 0 || carry > 0) {
        BigInt dx = x % p, dy = y % p;
        BigInt s = dx + dy + carry;
        carry = (s >= p) ? 1 : 0;
        if (carry == 1) ++carries;
        x /= p;
        y /= p;
    }
    return carries;
}

BigInt vp_factorial_legendre(const BigInt& m, const BigInt& p) {
    if (!is_prime(p)) throw bad_input("vp_factorial_legendre: p must be prime");
    BigInt v = 0, q = p;
    while (q <= m) {
        v += m / q;
        q *= p;
    }
    return v;
}

std::optional<BigInt> claim_2_3_17_first_failure(const BigInt& p, unsigned m) {
    if (!is_prime(p)) throw bad_input("claim_2_3_17: p must be prime");
    BigInt pm = pow_int(p, m);
    if (pm > 100000) throw bad_input("claim_2_3_17: p^m beyond desk bound 10^5");
    for (BigInt a = 2; a <= pm; ++a) {
        long v = vp_binomial_kummer(pm, a, p);
        if (a + v < BigInt(m) + 2) return a;
    }
    return std::nullopt;
}

bool check_claim_2_3_17(const BigInt& p, unsigned m) {
    return !claim_2_3_17_first_failure(p, m).has_value();
}

double to_double(const BigRational& x) { return x.get_d(); }

}  // namespace heightgap
