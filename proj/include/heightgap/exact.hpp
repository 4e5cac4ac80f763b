#pragma once

// Exact arbitrary-precision integers, rationals and p-adic valuations.
// Integer and rational arithmetic is backed by GMP; everything here is a
// thin layer adding the number-theoretic utilities the rest of the
// library is built on.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace heightgap {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Thrown when an input violates a documented precondition.
struct bad_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation cannot certify its own result
// (precision exhausted, internal cross-check failed, ...).
struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// v(0) = INFINITY; every other valuation is a finite integer.
class Valuation {
  public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw computation_error("valuation of zero has no finite value");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }

    Valuation operator+(const Valuation& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return of(v_ + o.v_);
    }

    std::string str() const { return infinite_ ? "oo" : std::to_string(v_); }

  private:
    Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long v_;
};

bool is_prime(const BigInt& n);

// Largest e with p^e | n; INFINITY for n = 0.  Rejects non-prime p.
Valuation vp_int(const BigInt& n, const BigInt& p);

// Valuation of a rational: v(num) - v(den).
Valuation vp_rational(const BigRational& x, const BigInt& p);

// v_p(binomial(m, a)) as the number of carries when adding a and m-a in
// base p (Kummer).  0 <= a <= m required.
long vp_binomial_kummer(const BigInt& m, const BigInt& a, const BigInt& p);

// Legendre-formula valuation of m!; the independent oracle for the above.
BigInt vp_factorial_legendre(const BigInt& m, const BigInt& p);

// True iff a + v_p(binomial(p^m, a)) >= m + 2 for every 2 <= a <= p^m.
// Exhaustive; p^m is kept within the desk bound.
bool check_claim_2_3_17(const BigInt& p, unsigned m);

// First a in [2, p^m] violating the inequality above, if any.
std::optional<BigInt> claim_2_3_17_first_failure(const BigInt& p, unsigned m);

inline BigInt pow_int(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Exact floor/ceil of log-free comparisons is handled by callers; this is
// the double value of a rational, used only on the reporting side.
double to_double(const BigRational& x);

}  // namespace heightgap
