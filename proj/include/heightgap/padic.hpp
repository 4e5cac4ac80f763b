#pragma once

// Capped-precision p-adic numbers over Q_p and its unramified extensions
// Q_{p^f}.  An element is p^v * u with the unit u known modulo p^r
// (relative precision r, capped at the context default N).  The unit part
// is a polynomial of degree < f over the fixed degree-f modulus shared
// with FqField, so residue arithmetic and p-adic arithmetic agree on the
// representation.
//
// Plain integers embed into every Z_p, so elements constructed from a
// bare integer carry no context yet; they stay exact until they meet a
// contexted element, which makes Series1<PadicElement> work with integer
// literals.

#include <memory>
#include <string>
#include <vector>

#include "heightgap/exact.hpp"
#include "heightgap/fq.hpp"

namespace heightgap {

inline constexpr long kDefaultPadicPrecision = 64;

struct PadicContext {
    BigInt p;
    unsigned f = 1;
    long N = kDefaultPadicPrecision;
    std::vector<BigInt> modulus;  // monic degree-f lift of the FqField modulus

    static std::shared_ptr<const PadicContext> make(const BigInt& p, unsigned f = 1,
                                                    long N = kDefaultPadicPrecision);
};

using PadicCtxPtr = std::shared_ptr<const PadicContext>;

class PadicElement {
  public:
    PadicElement() : pending_(true), pend_(0) {}            // exact 0
    PadicElement(long n) : pending_(true), pend_(n) {}      // exact integer, context deferred
    explicit PadicElement(BigInt n) : pending_(true), pend_(std::move(n)) {}

    static PadicElement zero() { return PadicElement(); }
    // Zero known only modulo p^abs ("O(p^abs)").
    static PadicElement inexact_zero(PadicCtxPtr ctx, long abs);
    static PadicElement from_integer(PadicCtxPtr ctx, const BigInt& n);
    static PadicElement from_rational(PadicCtxPtr ctx, const BigRational& x);
    // p^val * (unit given by coefficients), unit nonzero mod p.
    static PadicElement from_unit(PadicCtxPtr ctx, long val, std::vector<BigInt> unit,
                                  long rel_prec);

    bool is_pending() const { return pending_; }
    bool is_exact_zero() const { return pending_ && pend_ == 0; }
    bool is_zero_to_precision() const { return is_exact_zero() || (!pending_ && rel_ == 0); }
    // Valuation; INFINITY for (exact or to-precision) zero.  For a pending
    // integer the valuation needs a prime, so it is only available after
    // the element has met a context.
    Valuation valuation() const;
    long absolute_precision() const;  // exponent a with the element known mod p^a
    long relative_precision() const { return pending_ ? LONG_MAX / 4 : rel_; }
    const std::vector<BigInt>& unit_part() const { return unit_; }
    const PadicCtxPtr& context() const { return ctx_; }
    const BigInt& pending_value() const { return pend_; }

    PadicElement with_context(const PadicCtxPtr& ctx) const;

    PadicElement operator+(const PadicElement& o) const;
    PadicElement operator-(const PadicElement& o) const;
    PadicElement operator*(const PadicElement& o) const;
    PadicElement operator/(const PadicElement& o) const;
    PadicElement operator-() const;
    PadicElement inverse() const;
    PadicElement pow(long e) const;

    // Equal as far as both are known (difference is zero to precision).
    bool eq_to_precision(const PadicElement& o) const;

    // Residue image in F_{p^f}; requires valuation >= 0.
    FqElement residue(std::shared_ptr<const FqField> field) const;

    std::string str() const;

  private:
    bool pending_ = true;
    BigInt pend_ = 0;     // exact integer value while pending
    PadicCtxPtr ctx_;     // set once the element is contexted
    long val_ = 0;        // valuation (or absolute precision when rel_ == 0)
    long rel_ = 0;        // relative precision; 0 encodes an inexact zero
    std::vector<BigInt> unit_;  // degree < f, reduced mod p^rel_
    void normalize();
    static const PadicCtxPtr& common_ctx(const PadicElement& a, const PadicElement& b);
};

}  // namespace heightgap
