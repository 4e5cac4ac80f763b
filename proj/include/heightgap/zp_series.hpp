#pragma once

// Dense truncated series over Z/p^K, the workhorse representation for the
// formal-group computations (series lengths run to ~3*10^4 there).
// Multiplication packs coefficients into a single big integer and lets
// GMP's FFT do the convolution (Kronecker substitution); inversion and
// division by monic polynomials are Newton iterations on top of that.

#include <memory>
#include <vector>

#include "heightgap/exact.hpp"

namespace heightgap {

struct ZpCtx {
    BigInt p;
    long K;
    BigInt M;  // p^K

    static std::shared_ptr<const ZpCtx> make(const BigInt& p, long K);
};
using ZpCtxPtr = std::shared_ptr<const ZpCtx>;

class ZpSeries {
  public:
    ZpSeries() = default;
    ZpSeries(ZpCtxPtr ctx, std::vector<BigInt> coeffs);
    static ZpSeries zeros(ZpCtxPtr ctx, long len);

    const ZpCtxPtr& ctx() const { return ctx_; }
    long size() const { return static_cast<long>(c_.size()); }
    const BigInt& operator[](long i) const { return c_[i]; }
    BigInt& at(long i) { return c_[i]; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    void reduce();                    // bring all coefficients into [0, M)
    void resize(long len);            // truncate or zero-pad
    ZpSeries truncated(long len) const;

    ZpSeries operator+(const ZpSeries& o) const;
    ZpSeries operator-(const ZpSeries& o) const;
    ZpSeries scaled(const BigInt& k) const;
    ZpSeries shifted(long by) const;  // multiply by T^by (by >= 0)

    // v_p of coefficient i, capped at K (returns K for 0 mod p^K).
    long coeff_valuation(long i) const;
    bool is_zero() const;

  private:
    ZpCtxPtr ctx_;
    std::vector<BigInt> c_;
};

// a*b truncated to out_len coefficients (Kronecker substitution).
ZpSeries zp_mul(const ZpSeries& a, const ZpSeries& b, long out_len);

// 1/a truncated to out_len; a[0] must be a unit mod p.
ZpSeries zp_inverse(const ZpSeries& a, long out_len);

// Polynomial division of f (as a polynomial of degree f.size()-1) by the
// monic polynomial F: f = q*F + r, deg r < deg F.  Uses a Newton
// reciprocal for long quotients.
void zp_divmod_monic(const ZpSeries& f, const ZpSeries& F, ZpSeries& q, ZpSeries& r);

// Laurent series T^shift * s with s[0] the leading coefficient.
struct ZpLaurent {
    long shift = 0;
    ZpSeries s;

    ZpLaurent() = default;
    ZpLaurent(long sh, ZpSeries ser) : shift(sh), s(std::move(ser)) {}

    ZpLaurent stripped() const;  // remove leading zero coefficients
};

ZpLaurent zl_mul(const ZpLaurent& a, const ZpLaurent& b, long prec);
ZpLaurent zl_add(const ZpLaurent& a, const ZpLaurent& b);
ZpLaurent zl_sub(const ZpLaurent& a, const ZpLaurent& b);
ZpLaurent zl_scale(const ZpLaurent& a, const BigInt& k);
// 1/a to prec coefficients; the leading coefficient must be a unit mod p.
ZpLaurent zl_inverse(const ZpLaurent& a, long prec);

}  // namespace heightgap
