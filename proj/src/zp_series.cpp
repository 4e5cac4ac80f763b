#include "heightgap/zp_series.hpp"

#include <algorithm>
#include <cstring>

namespace heightgap {

std::shared_ptr<const ZpCtx> ZpCtx::make(const BigInt& p, long K) {
    if (!is_prime(p)) throw bad_input("ZpCtx: p must be prime");
    if (K < 1) throw bad_input("ZpCtx: K >= 1");
    auto ctx = std::make_shared<ZpCtx>();
    ctx->p = p;
    ctx->K = K;
    ctx->M = pow_int(p, static_cast<unsigned long>(K));
    return ctx;
}

ZpSeries::ZpSeries(ZpCtxPtr ctx, std::vector<BigInt> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    reduce();
}

ZpSeries ZpSeries::zeros(ZpCtxPtr ctx, long len) {
    ZpSeries s;
    s.ctx_ = std::move(ctx);
    s.c_.assign(len, BigInt(0));
    return s;
}

void ZpSeries::reduce() {
    for (auto& x : c_) {
        x %= ctx_->M;
        if (x < 0) x += ctx_->M;
    }
}

void ZpSeries::resize(long len) { c_.resize(len, BigInt(0)); }

ZpSeries ZpSeries::truncated(long len) const {
    ZpSeries r;
    r.ctx_ = ctx_;
    r.c_.assign(c_.begin(), c_.begin() + std::min<long>(len, size()));
    r.c_.resize(len, BigInt(0));
    return r;
}

ZpSeries ZpSeries::operator+(const ZpSeries& o) const {
    long n = std::max(size(), o.size());
    ZpSeries r = zeros(ctx_, n);
    for (long i = 0; i < n; ++i) {
        if (i < size()) r.c_[i] += c_[i];
        if (i < o.size()) r.c_[i] += o.c_[i];
        if (r.c_[i] >= ctx_->M) r.c_[i] -= ctx_->M;
    }
    return r;
}

ZpSeries ZpSeries::operator-(const ZpSeries& o) const {
    long n = std::max(size(), o.size());
    ZpSeries r = zeros(ctx_, n);
    for (long i = 0; i < n; ++i) {
        if (i < size()) r.c_[i] += c_[i];
        if (i < o.size()) r.c_[i] -= o.c_[i];
        if (r.c_[i] < 0) r.c_[i] += ctx_->M;
    }
    return r;
}

ZpSeries ZpSeries::scaled(const BigInt& k) const {
    ZpSeries r = *this;
    BigInt km = k % ctx_->M;
    if (km < 0) km += ctx_->M;
    for (auto& x : r.c_) x = x * km % ctx_->M;
    return r;
}

ZpSeries ZpSeries::shifted(long by) const {
    if (by < 0) throw bad_input("ZpSeries::shifted: negative shift");
    ZpSeries r = zeros(ctx_, size() + by);
    for (long i = 0; i < size(); ++i) r.c_[i + by] = c_[i];
    return r;
}

long ZpSeries::coeff_valuation(long i) const {
    if (c_[i] == 0) return ctx_->K;
    BigInt m = c_[i];
    long v = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ctx_->p.get_mpz_t()));
    return std::min<long>(v, ctx_->K);
}

bool ZpSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& x) { return x == 0; });
}

namespace {

constexpr long kSchoolbookCutoff = 64;

ZpSeries mul_schoolbook(const ZpSeries& a, const ZpSeries& b, long out_len) {
    ZpSeries r = ZpSeries::zeros(a.ctx(), out_len);
    for (long i = 0; i < a.size() && i < out_len; ++i) {
        if (a[i] == 0) continue;
        long jmax = std::min<long>(b.size(), out_len - i);
        for (long j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            r.at(i + j) += a[i] * b[j];
        }
    }
    r.reduce();
    return r;
}

// pack coefficients into consecutive slots of slot_limbs 64-bit words
void pack(const ZpSeries& s, long len, long slot_limbs, std::vector<mp_limb_t>& buf) {
    buf.assign(static_cast<size_t>(len) * slot_limbs, 0);
    for (long i = 0; i < len && i < s.size(); ++i) {
        const mpz_srcptr z = s[i].get_mpz_t();
        size_t limbs = mpz_size(z);
        if (limbs)
            std::memcpy(&buf[static_cast<size_t>(i) * slot_limbs], mpz_limbs_read(z),
                        limbs * sizeof(mp_limb_t));
    }
}

}  // namespace

ZpSeries zp_mul(const ZpSeries& a, const ZpSeries& b, long out_len) {
    if (!a.ctx() || !b.ctx() || a.ctx()->M != b.ctx()->M)
        throw bad_input("zp_mul: mismatched contexts");
    long la = std::min<long>(a.size(), out_len);
    long lb = std::min<long>(b.size(), out_len);
    if (la <= 0 || lb <= 0) return ZpSeries::zeros(a.ctx(), out_len);
    if (static_cast<double>(la) * lb <= kSchoolbookCutoff * kSchoolbookCutoff)
        return mul_schoolbook(a, b, out_len);

    long bitsM = mpz_sizeinbase(a.ctx()->M.get_mpz_t(), 2);
    long count_bits = 1;
    while ((1L << count_bits) < std::min(la, lb) + 1) ++count_bits;
    long slot_bits = 2 * bitsM + count_bits + 1;
    long slot_limbs = (slot_bits + 63) / 64;

    std::vector<mp_limb_t> bufa, bufb;
    pack(a, la, slot_limbs, bufa);
    pack(b, lb, slot_limbs, bufb);

    mpz_class A, B;
    mpz_import(A.get_mpz_t(), bufa.size(), -1, sizeof(mp_limb_t), 0, 0, bufa.data());
    mpz_import(B.get_mpz_t(), bufb.size(), -1, sizeof(mp_limb_t), 0, 0, bufb.data());
    mpz_class C = A * B;

    size_t total_limbs = static_cast<size_t>(la + lb) * slot_limbs;
    std::vector<mp_limb_t> out(total_limbs, 0);
    size_t climbs = mpz_size(C.get_mpz_t());
    std::memcpy(out.data(), mpz_limbs_read(C.get_mpz_t()),
                std::min(climbs, total_limbs) * sizeof(mp_limb_t));

    ZpSeries r = ZpSeries::zeros(a.ctx(), out_len);
    mpz_class slot;
    for (long i = 0; i < out_len && i < la + lb - 1; ++i) {
        mpz_import(slot.get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0,
                   &out[static_cast<size_t>(i) * slot_limbs]);
        r.at(i) = slot % a.ctx()->M;
    }
    return r;
}

ZpSeries zp_inverse(const ZpSeries& a, long out_len) {
    if (a.size() < 1 || a[0] == 0) throw bad_input("zp_inverse: constant term must be a unit");
    BigInt g;
    if (!mpz_invert(g.get_mpz_t(), a[0].get_mpz_t(), a.ctx()->M.get_mpz_t()))
        throw bad_input("zp_inverse: constant term not a unit mod p");
    ZpSeries inv = ZpSeries::zeros(a.ctx(), 1);
    inv.at(0) = g;
    long n = 1;
    while (n < out_len) {
        n = std::min(2 * n, out_len);
        ZpSeries t = zp_mul(a.truncated(n), inv, n);
        // t <- 2 - t
        ZpSeries two = ZpSeries::zeros(a.ctx(), n);
        two.at(0) = 2;
        t = two - t;
        inv = zp_mul(inv, t, n);
    }
    return inv;
}

void zp_divmod_monic(const ZpSeries& f, const ZpSeries& F, ZpSeries& q, ZpSeries& r) {
    long s = F.size() - 1;
    if (s < 0 || F[s] != 1) throw bad_input("zp_divmod_monic: divisor must be monic");
    long n = f.size() - 1;
    if (n < s) {
        q = ZpSeries::zeros(f.ctx(), 1);
        r = f;
        r.resize(std::max<long>(s, 1));
        return;
    }
    long qlen = n - s + 1;
    if (static_cast<double>(qlen) * s <= 4096.0 * 64) {
        // schoolbook long division
        q = ZpSeries::zeros(f.ctx(), qlen);
        std::vector<BigInt> rem = f.coeffs();
        const BigInt& M = f.ctx()->M;
        for (long i = n; i >= s; --i) {
            BigInt c = rem[i] % M;
            if (c < 0) c += M;
            q.at(i - s) = c;
            if (c == 0) continue;
            rem[i] = 0;
            for (long j = 0; j < s; ++j) {
                rem[i - s + j] -= c * F[j];
                rem[i - s + j] %= M;
            }
        }
        rem.resize(std::max<long>(s, 1));
        r = ZpSeries(f.ctx(), std::move(rem));
        return;
    }
    // Newton: q = rev_n-s(rev(f) * rev(F)^{-1})
    ZpSeries fr = ZpSeries::zeros(f.ctx(), qlen);
    for (long i = 0; i < qlen; ++i) fr.at(i) = f[n - i];
    ZpSeries Fr = ZpSeries::zeros(f.ctx(), std::min<long>(s + 1, qlen));
    for (long i = 0; i < Fr.size(); ++i) Fr.at(i) = F[s - i];
    ZpSeries Fri = zp_inverse(Fr, qlen);
    ZpSeries qr = zp_mul(fr, Fri, qlen);
    q = ZpSeries::zeros(f.ctx(), qlen);
    for (long i = 0; i < qlen; ++i) q.at(i) = qr[qlen - 1 - i];
    // r = f - q F restricted to degrees < s
    ZpSeries qF = zp_mul(q, F.truncated(std::min<long>(s + 1, f.size())), s);
    r = f.truncated(std::max<long>(s, 1)) - qF.truncated(std::max<long>(s, 1));
}

ZpLaurent ZpLaurent::stripped() const {
    long i = 0;
    while (i < s.size() && s[i] == 0) ++i;
    if (i == 0) return *this;
    ZpLaurent r;
    r.shift = shift + i;
    r.s = ZpSeries::zeros(s.ctx(), s.size() - i);
    for (long j = i; j < s.size(); ++j) r.s.at(j - i) = s[j];
    return r;
}

ZpLaurent zl_mul(const ZpLaurent& a, const ZpLaurent& b, long prec) {
    return ZpLaurent(a.shift + b.shift, zp_mul(a.s, b.s, prec));
}

ZpLaurent zl_add(const ZpLaurent& a, const ZpLaurent& b) {
    long sh = std::min(a.shift, b.shift);
    long n = std::max(a.shift - sh + a.s.size(), b.shift - sh + b.s.size());
    ZpSeries s = ZpSeries::zeros(a.s.ctx(), n);
    for (long i = 0; i < a.s.size(); ++i) s.at(i + a.shift - sh) = a.s[i];
    for (long i = 0; i < b.s.size(); ++i) {
        BigInt& t = s.at(i + b.shift - sh);
        t += b.s[i];
        if (t >= s.ctx()->M) t -= s.ctx()->M;
    }
    return ZpLaurent(sh, std::move(s));
}

ZpLaurent zl_sub(const ZpLaurent& a, const ZpLaurent& b) {
    return zl_add(a, zl_scale(b, BigInt(-1)));
}

ZpLaurent zl_scale(const ZpLaurent& a, const BigInt& k) {
    return ZpLaurent(a.shift, a.s.scaled(k));
}

ZpLaurent zl_inverse(const ZpLaurent& a, long prec) {
    ZpLaurent n = a.stripped();
    return ZpLaurent(-n.shift, zp_inverse(n.s, prec));
}

}  // namespace heightgap
