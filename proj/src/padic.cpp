#include "heightgap/padic.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace heightgap {

namespace {

BigInt pow_p(const BigInt& p, long e) {
    if (e < 0) throw computation_error("pow_p: negative exponent");
    return pow_int(p, static_cast<unsigned long>(e));
}

void reduce_mod(std::vector<BigInt>& c, const BigInt& m) {
    for (auto& x : c) {
        x %= m;
        if (x < 0) x += m;
    }
}

std::vector<BigInt> poly_mul_mod(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                 const std::vector<BigInt>& modulus, const BigInt& pr) {
    size_t f = modulus.size() - 1;
    if (f == 1) {
        std::vector<BigInt> r(1);
        r[0] = a[0] * b[0] % pr;
        return r;
    }
    std::vector<BigInt> prod(2 * f - 1, BigInt(0));
    for (size_t i = 0; i < f; ++i) {
        if (i < a.size() && a[i] != 0)
            for (size_t j = 0; j < f; ++j)
                if (j < b.size()) prod[i + j] += a[i] * b[j];
    }
    for (size_t i = prod.size(); i-- > f;) {
        if (prod[i] == 0) continue;
        BigInt c = prod[i];
        prod[i] = 0;
        for (size_t j = 0; j < f; ++j) prod[i - f + j] -= c * modulus[j];
    }
    prod.resize(f);
    reduce_mod(prod, pr);
    return prod;
}

long poly_valuation(const std::vector<BigInt>& c, const BigInt& p, long cap) {
    long best = cap;
    for (const auto& x : c) {
        if (x == 0) continue;
        BigInt m = x;
        long v = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

}  // namespace

std::shared_ptr<const PadicContext> PadicContext::make(const BigInt& p, unsigned f, long N) {
    if (!is_prime(p)) throw bad_input("PadicContext: p must be prime");
    if (f < 1) throw bad_input("PadicContext: f >= 1");
    if (N < 1) throw bad_input("PadicContext: N >= 1");
    auto ctx = std::make_shared<PadicContext>();
    ctx->p = p;
    ctx->f = f;
    ctx->N = N;
    if (f == 1) {
        ctx->modulus = {BigInt(0), BigInt(1)};
    } else {
        if (!p.fits_ulong_p()) throw bad_input("PadicContext: f > 1 needs small p");
        auto fq = FqField::make(p.get_ui(), f);
        ctx->modulus.reserve(f + 1);
        for (auto c : fq->modulus()) ctx->modulus.emplace_back(static_cast<unsigned long>(c));
    }
    return ctx;
}

PadicElement PadicElement::inexact_zero(PadicCtxPtr ctx, long abs) {
    PadicElement e;
    e.pending_ = false;
    e.ctx_ = std::move(ctx);
    e.val_ = abs;
    e.rel_ = 0;
    return e;
}

PadicElement PadicElement::from_unit(PadicCtxPtr ctx, long val, std::vector<BigInt> unit,
                                     long rel_prec) {
    PadicElement e;
    e.pending_ = false;
    e.ctx_ = std::move(ctx);
    e.val_ = val;
    e.rel_ = std::min(rel_prec, e.ctx_->N);
    unit.resize(e.ctx_->f, BigInt(0));
    e.unit_ = std::move(unit);
    e.normalize();
    return e;
}

PadicElement PadicElement::from_integer(PadicCtxPtr ctx, const BigInt& n) {
    if (n == 0) {
        PadicElement e;
        e.pending_ = false;
        e.ctx_ = std::move(ctx);
        e.val_ = e.ctx_->N * 4;  // far beyond the cap; zero to every tracked digit
        e.rel_ = 0;
        return e;
    }
    BigInt m = n;
    long v = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ctx->p.get_mpz_t()));
    std::vector<BigInt> u(ctx->f, BigInt(0));
    u[0] = m;
    return from_unit(std::move(ctx), v, std::move(u), LONG_MAX / 4);
}

PadicElement PadicElement::from_rational(PadicCtxPtr ctx, const BigRational& x) {
    if (x == 0) return from_integer(std::move(ctx), 0);
    PadicElement num = from_integer(ctx, x.get_num());
    PadicElement den = from_integer(ctx, x.get_den());
    return num / den;
}

PadicElement PadicElement::with_context(const PadicCtxPtr& ctx) const {
    if (!pending_) return *this;
    return from_integer(ctx, pend_);
}

const PadicCtxPtr& PadicElement::common_ctx(const PadicElement& a, const PadicElement& b) {
    if (a.ctx_ && b.ctx_) {
        if (!(a.ctx_->p == b.ctx_->p) || a.ctx_->f != b.ctx_->f)
            throw bad_input("PadicElement: mismatched contexts");
        return a.ctx_;
    }
    return a.ctx_ ? a.ctx_ : b.ctx_;
}

void PadicElement::normalize() {
    if (pending_ || rel_ == 0) return;
    BigInt pr = pow_p(ctx_->p, rel_);
    reduce_mod(unit_, pr);
    long v = poly_valuation(unit_, ctx_->p, rel_);
    if (v >= rel_) {  // zero to precision
        val_ = val_ + rel_;
        rel_ = 0;
        unit_.clear();
        return;
    }
    if (v > 0) {
        BigInt pv = pow_p(ctx_->p, v);
        for (auto& c : unit_) c /= pv;
        val_ += v;
        rel_ -= v;
    }
    if (rel_ > ctx_->N) rel_ = ctx_->N;
    pr = pow_p(ctx_->p, rel_);
    reduce_mod(unit_, pr);
}

Valuation PadicElement::valuation() const {
    if (is_exact_zero()) return Valuation::infinity();
    if (pending_) throw computation_error("PadicElement: pending integer has no prime yet");
    if (rel_ == 0) return Valuation::infinity();  // only known to be >= val_
    return Valuation::of(val_);
}

long PadicElement::absolute_precision() const {
    if (pending_) return LONG_MAX / 4;
    return rel_ == 0 ? val_ : val_ + rel_;
}

PadicElement PadicElement::operator-() const {
    if (pending_) {
        PadicElement e;
        e.pend_ = -pend_;
        return e;
    }
    if (rel_ == 0) return *this;
    PadicElement r = *this;
    BigInt pr = pow_p(ctx_->p, rel_);
    for (auto& c : r.unit_) c = (pr - c) % pr;
    r.normalize();
    return r;
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
    if (pending_ && o.pending_) return PadicElement(BigInt(pend_ + o.pend_));
    const PadicCtxPtr& ctx = common_ctx(*this, o);
    PadicElement a = with_context(ctx), b = o.with_context(ctx);
    if (a.rel_ == 0 && b.rel_ == 0)
        return inexact_zero(ctx, std::min(a.val_, b.val_));
    long abs = std::min(a.absolute_precision(), b.absolute_precision());
    long v = std::min(a.rel_ == 0 ? abs : a.val_, b.rel_ == 0 ? abs : b.val_);
    long digits = abs - v;
    if (digits <= 0) return inexact_zero(ctx, abs);
    BigInt pr = pow_p(ctx->p, digits);
    std::vector<BigInt> s(ctx->f, BigInt(0));
    if (a.rel_ != 0) {
        BigInt shift = pow_p(ctx->p, a.val_ - v);
        for (unsigned i = 0; i < ctx->f; ++i) s[i] += a.unit_[i] * shift;
    }
    if (b.rel_ != 0) {
        BigInt shift = pow_p(ctx->p, b.val_ - v);
        for (unsigned i = 0; i < ctx->f; ++i) s[i] += b.unit_[i] * shift;
    }
    reduce_mod(s, pr);
    long t = poly_valuation(s, ctx->p, digits);
    if (t >= digits) return inexact_zero(ctx, abs);
    PadicElement r;
    r.pending_ = false;
    r.ctx_ = ctx;
    r.val_ = v;
    r.rel_ = digits;
    r.unit_ = std::move(s);
    r.normalize();
    return r;
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
    if (pending_ && o.pending_) return PadicElement(BigInt(pend_ * o.pend_));
    if (is_exact_zero() || o.is_exact_zero()) return zero();
    const PadicCtxPtr& ctx = common_ctx(*this, o);
    PadicElement a = with_context(ctx), b = o.with_context(ctx);
    if (a.rel_ == 0 || b.rel_ == 0) {
        long va = a.rel_ == 0 ? a.val_ : a.val_;
        long vb = b.rel_ == 0 ? b.val_ : b.val_;
        return inexact_zero(ctx, va + vb);
    }
    long rel = std::min({a.rel_, b.rel_, ctx->N});
    BigInt pr = pow_p(ctx->p, rel);
    PadicElement r;
    r.pending_ = false;
    r.ctx_ = ctx;
    r.val_ = a.val_ + b.val_;
    r.rel_ = rel;
    r.unit_ = poly_mul_mod(a.unit_, b.unit_, ctx->modulus, pr);
    r.normalize();
    return r;
}

PadicElement PadicElement::inverse() const {
    if (is_exact_zero()) throw bad_input("PadicElement: inverse of zero");
    if (pending_) {
        if (pend_ == 1 || pend_ == -1) return *this;
        throw bad_input("PadicElement: inverse of a bare integer needs a context");
    }
    if (rel_ == 0)
        throw computation_error("PadicElement: division by zero-to-precision element");
    const BigInt& p = ctx_->p;
    unsigned f = ctx_->f;
    std::vector<BigInt> inv0(f, BigInt(0));
    if (f == 1) {
        BigInt u0 = unit_[0] % p;
        if (u0 < 0) u0 += p;
        BigInt g;
        if (!mpz_invert(g.get_mpz_t(), u0.get_mpz_t(), p.get_mpz_t()))
            throw computation_error("PadicElement: unit inversion failed");
        inv0[0] = g;
    } else {
        auto fq = FqField::make(p.get_ui(), f);
        std::vector<std::uint64_t> uc(f);
        for (unsigned i = 0; i < f; ++i) {
            BigInt m = unit_[i] % p;
            if (m < 0) m += p;
            uc[i] = m.get_ui();
        }
        FqElement ei = FqElement(fq, uc).inverse();
        for (unsigned i = 0; i < f; ++i)
            inv0[i] = BigInt(static_cast<unsigned long>(ei.coeffs()[i]));
    }
    long k = 1;
    std::vector<BigInt> x = inv0;
    while (k < rel_) {
        k = std::min(2 * k, rel_);
        BigInt pk = pow_p(p, k);
        auto ux = poly_mul_mod(unit_, x, ctx_->modulus, pk);
        for (auto& c : ux) c = -c;
        ux[0] += 2;
        reduce_mod(ux, pk);
        x = poly_mul_mod(x, ux, ctx_->modulus, pk);
    }
    PadicElement r;
    r.pending_ = false;
    r.ctx_ = ctx_;
    r.val_ = -val_;
    r.rel_ = rel_;
    r.unit_ = std::move(x);
    r.normalize();
    return r;
}

PadicElement PadicElement::operator/(const PadicElement& o) const {
    if (o.is_exact_zero()) throw bad_input("PadicElement: division by zero");
    if (o.pending_ && !pending_) return *this * o.with_context(ctx_).inverse();
    return *this * o.inverse();
}

PadicElement PadicElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    PadicElement acc(1);
    PadicElement b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

bool PadicElement::eq_to_precision(const PadicElement& o) const {
    PadicElement d = *this - o;
    if (d.pending_) return d.pend_ == 0;
    return d.rel_ == 0;
}

FqElement PadicElement::residue(std::shared_ptr<const FqField> field) const {
    if (is_exact_zero()) return FqElement::from_int(field, 0);
    if (pending_) return FqElement::from_int(field, pend_);
    if (rel_ == 0) {
        if (val_ < 1) throw computation_error("residue: precision exhausted");
        return FqElement::from_int(field, 0);
    }
    if (val_ < 0) throw bad_input("residue: negative valuation");
    if (val_ > 0) return FqElement::from_int(field, 0);
    std::vector<std::uint64_t> c(ctx_->f);
    for (unsigned i = 0; i < ctx_->f; ++i) {
        BigInt m = unit_[i] % ctx_->p;
        if (m < 0) m += ctx_->p;
        c[i] = m.get_ui();
    }
    return FqElement(std::move(field), std::move(c));
}

std::string PadicElement::str() const {
    std::ostringstream os;
    if (pending_) {
        os << pend_;
        return os.str();
    }
    if (rel_ == 0) {
        os << "O(" << ctx_->p << "^" << val_ << ")";
        return os.str();
    }
    os << ctx_->p << "^" << val_ << "*(";
    for (unsigned i = 0; i < ctx_->f; ++i) {
        if (i) os << " + ";
        os << unit_[i];
        if (i) os << "*a^" << i;
    }
    os << ") + O(" << ctx_->p << "^" << absolute_precision() << ")";
    return os.str();
}

}  // namespace heightgap
