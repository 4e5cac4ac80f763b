#include "heightgap/formal.hpp"

#include <algorithm>
#include <map>

namespace heightgap {

QSeries1 build_w_series(const WeierstrassCurve& curve, long order) {
    if (order < 4) throw bad_input("build_w_series: order >= 4");
    const BigRational &a1 = curve.a1(), &a2 = curve.a2(), &a3 = curve.a3(), &a4 = curve.a4(),
                      &a6 = curve.a6();
    QSeries1 z3 = QSeries1::monomial(order, 3, 1);
    QSeries1 z = QSeries1::identity(order);
    QSeries1 w = z3;
    // fixed point of w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3;
    // each pass extends the correct prefix, so `order` passes suffice
    for (long it = 0; it < order; ++it) {
        QSeries1 w2 = w * w;
        QSeries1 next = z3 + (z * w).scaled(a1) + (z * z * w).scaled(a2) + w2.scaled(a3) +
                        (z * w2).scaled(a4) + (w2 * w).scaled(a6);
        if (next == w) break;
        w = next;
    }
    return w;
}

namespace {

LaurentQ laurent_from_series(const QSeries1& s, long shift) { return LaurentQ{shift, s}; }

LaurentQ laurent_mul(const LaurentQ& a, const LaurentQ& b) {
    return LaurentQ{a.shift + b.shift, a.tail * b.tail};
}

LaurentQ laurent_add(const LaurentQ& a, const LaurentQ& b) {
    long sh = std::min(a.shift, b.shift);
    long order = std::min(a.shift - sh + a.tail.order(), b.shift - sh + b.tail.order());
    QSeries1 s(order);
    for (const auto& [d, v] : a.tail.coeffs()) s.set(d + a.shift - sh, v);
    for (const auto& [d, v] : b.tail.coeffs()) s.set(d + b.shift - sh, s.get(d + b.shift - sh) + v);
    return LaurentQ{sh, std::move(s)};
}

LaurentQ laurent_inverse(const LaurentQ& a, long prec) {
    long lo = a.tail.low_degree();
    if (lo < 0) throw bad_input("laurent_inverse: zero series");
    QSeries1 unit(prec);
    for (const auto& [d, v] : a.tail.coeffs())
        if (d - lo < prec) unit.set(d - lo, v);
    return LaurentQ{-(a.shift + lo), unit.inverse()};
}

// divide 2-var series H by (Y - X); requires H(X,X) = 0 within truncation
QSeries2 divide_by_y_minus_x(const QSeries2& H) {
    long order = H.order();
    // treat H as polynomial in Y with coefficients in Q[X]: synthetic
    // division by (Y - X): processing Y-degrees downward,
    // Q_j = H_{j+1} + X*Q_{j+1}
    std::map<long, std::map<long, BigRational>> rows;  // j -> (i -> coeff)
    for (const auto& [k, v] : H.coeffs()) rows[k.second][k.first] = v;
    long topj = rows.empty() ? -1 : rows.rbegin()->first;
    QSeries2 Q(order);
    std::map<long, BigRational> carry;  // Q_{j} as X-poly while descending
    for (long j = topj - 1; j >= 0; --j) {
        std::map<long, BigRational> qj;
        auto it = rows.find(j + 1);
        if (it != rows.end()) qj = it->second;
        for (const auto& [i, v] : carry) {
            auto& slot = qj[i + 1];
            slot += v;
            if (slot == 0) qj.erase(i + 1);
        }
        for (const auto& [i, v] : qj)
            if (v != 0 && i + j < order) Q.set(i, j, v);
        carry = std::move(qj);
    }
    return Q;
}

}  // namespace

FormalGroupData build_group_law(const WeierstrassCurve& curve, long order) {
    if (order < 3) throw bad_input("build_group_law: order >= 3");
    long work = order + 6;
    QSeries1 w = build_w_series(curve, work);
    // x = Z/w = Z^{-2} * unit, y = -1/w = -Z^{-3} * unit
    QSeries1 wu(work);
    for (const auto& [d, v] : w.coeffs())
        if (d - 3 < work) wu.set(d - 3, v);
    QSeries1 wu_inv = wu.inverse();
    LaurentQ x = laurent_from_series(wu_inv, -2);
    LaurentQ y = laurent_from_series(-wu_inv, -3);

    // negation series i(T) = x / (y + a1 x + a3)
    LaurentQ denom = laurent_add(laurent_add(y, LaurentQ{-2, wu_inv.scaled(curve.a1())}),
                                 LaurentQ{0, QSeries1::monomial(work, 0, curve.a3())});
    LaurentQ quot = laurent_mul(x, laurent_inverse(denom, work));
    QSeries1 neg(order);
    if (quot.shift < 1) {
        for (const auto& [d, v] : quot.tail.coeffs())
            if (d + quot.shift >= 1 && d + quot.shift < order) {
                neg.set(d + quot.shift, v);
            } else if (d + quot.shift < 1 && v != 0) {
                throw computation_error("build_group_law: negation series not regular");
            }
    }

    // slope of the chord through (X, w(X)) and (Y, w(Y)):
    // m = (w(Y) - w(X)) / (Y - X), an honest 2-var power series
    long O = order;
    QSeries2 X2 = QSeries2(O);
    X2.set(1, 0, 1);
    QSeries2 Y2 = QSeries2(O);
    Y2.set(0, 1, 1);
    QSeries2 wX(O), wY(O);
    for (const auto& [d, v] : w.coeffs()) {
        if (d < O) {
            wX.set(d, 0, v);
            wY.set(0, d, v);
        }
    }
    QSeries2 m2 = divide_by_y_minus_x(wY - wX);
    QSeries2 c2 = wX - m2 * X2;  // intercept: w = m z + c

    // substitute the line into f(z,w) - w; cubic coefficients in z:
    // A3 = 1 + a2 m + a4 m^2 + a6 m^3
    // A2 = a1 m + a2 c + a3 m^2 + 2 a4 m c + 3 a6 m^2 c
    const BigRational &a1 = curve.a1(), &a2 = curve.a2(), &a3 = curve.a3(), &a4 = curve.a4(),
                      &a6 = curve.a6();
    QSeries2 one(O);
    one.set(0, 0, 1);
    QSeries2 mm = m2 * m2;
    QSeries2 A3 = one + m2.scaled(a2) + mm.scaled(a4) + (mm * m2).scaled(a6);
    QSeries2 A2 = m2.scaled(a1) + c2.scaled(a2) + mm.scaled(a3) + (m2 * c2).scaled(2 * a4) +
                  (mm * c2).scaled(3 * a6);
    // z3 = -X - Y - A2/A3  (sum of the three roots is -A2/A3)
    QSeries2 z3 = QSeries2(O) - X2 - Y2 - A2 * A3.inverse_unit();
    // F = i(z3)
    QSeries2 Fxy = series_compose_1into2(neg.truncated(O), z3);

    FormalGroupData fg{curve, order, w.truncated(order), x, y, Fxy, neg};
    return fg;
}

MulSeries mul_by_m(const FormalGroupData& fg, long m) {
    long order = fg.F.order();
    MulSeries out;
    out.m = m;
    if (m == 0) {
        out.series = QSeries1(order);
        return out;
    }
    bool negate = m < 0;
    unsigned long mm = negate ? -static_cast<unsigned long>(m) : m;
    // binary chain: [2k] = F([k],[k]), [2k+1] = F([2k], T)
    QSeries1 T = QSeries1::identity(order);
    QSeries1 cur = T;  // [1]
    int bits = 0;
    unsigned long tmp = mm;
    while (tmp >>= 1) ++bits;
    for (int b = bits - 1; b >= 0; --b) {
        cur = series_compose2(fg.F, cur, cur);
        if ((mm >> b) & 1) cur = series_compose2(fg.F, cur, T);
    }
    if (negate) cur = series_compose(fg.neg, cur);
    out.series = cur;
    return out;
}

QSeries1 mul_by_m_recurrence(const FormalGroupData& fg, long m) {
    long order = fg.F.order();
    QSeries1 T = QSeries1::identity(order);
    if (m == 0) return QSeries1(order);
    if (m < 0) return series_compose(fg.neg, mul_by_m_recurrence(fg, -m));
    QSeries1 cur = T;
    for (long k = 1; k < m; ++k) cur = series_compose2(fg.F, cur, T);
    return cur;
}

// ---- fast engine ----------------------------------------------------------

namespace {

struct ZpFormalEngine {
    ZpCtxPtr ctx;
    long order;
    BigInt A, B;  // short form
    ZpLaurent x, y, inv2y, inv4y;
    std::map<long, ZpLaurent> psi;

    ZpFormalEngine(const WeierstrassCurve& curve, ZpCtxPtr c, long ord) : ctx(std::move(c)), order(ord) {
        if (!curve.is_short_form() || !curve.has_integral_coefficients())
            throw bad_input("zp formal engine: integral short-form curve required");
        A = curve.a4().get_num();
        B = curve.a6().get_num();
        build_xy();
        seed_psi();
    }

    void build_xy() {
        // w(Z) by Newton on P(w) = w - Z^3 - A Z w^2 - B w^3
        long n = 4;
        ZpSeries w = ZpSeries::zeros(ctx, 4);
        w.at(3) = 1;
        ZpSeries Zser = ZpSeries::zeros(ctx, 2);
        Zser.at(1) = 1;
        long target = order + 3;
        while (n < target) {
            n = std::min(2 * n, target);
            ZpSeries w2 = zp_mul(w, w, n);
            ZpSeries w3 = zp_mul(w2, w, n);
            ZpSeries z3 = ZpSeries::zeros(ctx, n);
            if (n > 3) z3.at(3) = 1;
            ZpSeries P = w.truncated(n) - z3 - zp_mul(Zser, w2, n).scaled(A) - w3.scaled(B);
            ZpSeries dP = ZpSeries::zeros(ctx, n);
            dP.at(0) = 1;
            dP = dP - zp_mul(Zser, w, n).scaled(2 * A) - w2.scaled(3 * B);
            w = w.truncated(n) - zp_mul(P, zp_inverse(dP, n), n);
        }
        // x = Z/w = T^{-2} u^{-1}, y = -1/w = -T^{-3} u^{-1} with w = T^3 u
        ZpSeries u = ZpSeries::zeros(ctx, target);
        for (long i = 3; i < w.size() && i - 3 < target; ++i) u.at(i - 3) = w[i];
        ZpSeries uinv = zp_inverse(u, target);
        x = ZpLaurent(-2, uinv);
        y = ZpLaurent(-3, uinv.scaled(BigInt(-1)));
        inv2y = zl_inverse(zl_scale(y, BigInt(2)), order);
        inv4y = zl_inverse(zl_scale(y, BigInt(4)), order);
    }

    void seed_psi() {
        ZpSeries one = ZpSeries::zeros(ctx, 1);
        one.at(0) = 1;
        psi[1] = ZpLaurent(0, one);
        psi[2] = zl_scale(y, BigInt(2));
        ZpLaurent x2 = zl_mul(x, x, order);
        ZpLaurent x3 = zl_mul(x2, x, order);
        ZpLaurent x4 = zl_mul(x2, x2, order);
        // psi3 = 3x^4 + 6A x^2 + 12B x - A^2
        ZpSeries cA = ZpSeries::zeros(ctx, 1);
        cA.at(0) = -A * A;
        psi[3] = zl_add(zl_add(zl_scale(x4, BigInt(3)), zl_scale(x2, 6 * A)),
                        zl_add(zl_scale(x, 12 * B), ZpLaurent(0, cA)));
        // psi4 = 4y (x^6 + 5A x^4 + 20B x^3 - 5A^2 x^2 - 4AB x - 8B^2 - A^3)
        ZpLaurent x6 = zl_mul(x4, x2, order);
        ZpSeries c0 = ZpSeries::zeros(ctx, 1);
        c0.at(0) = -8 * B * B - A * A * A;
        ZpLaurent inner = zl_add(
            zl_add(zl_add(x6, zl_scale(x4, 5 * A)), zl_add(zl_scale(x3, 20 * B), zl_scale(x2, -5 * A * A))),
            zl_add(zl_scale(x, -4 * A * B), ZpLaurent(0, c0)));
        psi[4] = zl_mul(zl_scale(y, BigInt(4)), inner, order);
    }

    const ZpLaurent& get_psi(long m) {
        auto it = psi.find(m);
        if (it != psi.end()) return it->second;
        ZpLaurent r;
        if (m % 2 == 1) {
            long k = (m - 1) / 2;
            const ZpLaurent& pk = get_psi(k);
            ZpLaurent pk3 = zl_mul(pk, zl_mul(pk, pk, order), order);
            const ZpLaurent& pk1 = get_psi(k + 1);
            ZpLaurent pk13 = zl_mul(pk1, zl_mul(pk1, pk1, order), order);
            r = zl_sub(zl_mul(get_psi(k + 2), pk3, order), zl_mul(get_psi(k - 1), pk13, order));
        } else {
            long k = m / 2;
            const ZpLaurent& pm1 = get_psi(k - 1);
            const ZpLaurent& pp1 = get_psi(k + 1);
            ZpLaurent t1 = zl_mul(get_psi(k + 2), zl_mul(pm1, pm1, order), order);
            ZpLaurent t2 = zl_mul(get_psi(k - 2), zl_mul(pp1, pp1, order), order);
            r = zl_mul(zl_mul(get_psi(k), zl_sub(t1, t2), order), inv2y, order);
        }
        auto [it2, ok] = psi.emplace(m, std::move(r));
        return it2->second;
    }

    // [m](T) = -phi_m psi_m / omega_m as a plain series (length `order`)
    ZpSeries mul_series(long m) {
        if (m < 2) {
            if (m == 1) {
                ZpSeries t = ZpSeries::zeros(ctx, order);
                if (order > 1) t.at(1) = 1;
                return t;
            }
            throw bad_input("zp mul_series: m >= 1");
        }
        const ZpLaurent& pm = get_psi(m);
        ZpLaurent phim = zl_sub(zl_mul(x, zl_mul(pm, pm, order), order),
                                zl_mul(get_psi(m + 1), get_psi(m - 1), order));
        const ZpLaurent& pm1 = get_psi(m - 1);
        const ZpLaurent& pp1 = get_psi(m + 1);
        ZpLaurent om = zl_mul(zl_sub(zl_mul(get_psi(m + 2), zl_mul(pm1, pm1, order), order),
                                     zl_mul(get_psi(m - 2), zl_mul(pp1, pp1, order), order)),
                              inv4y, order);
        ZpLaurent z = zl_scale(
            zl_mul(zl_mul(phim, pm, order), zl_inverse(om, order), order), BigInt(-1));
        z = z.stripped();
        if (z.shift < 1) throw computation_error("zp mul_series: [m](T) not regular at 0");
        ZpSeries out = ZpSeries::zeros(ctx, order);
        for (long i = 0; i < z.s.size() && i + z.shift < order; ++i) out.at(i + z.shift) = z.s[i];
        return out;
    }
};

}  // namespace

ZpSeries zp_mul_series(const WeierstrassCurve& curve, long m, const ZpCtxPtr& ctx, long order) {
    ZpFormalEngine eng(curve, ctx, order);
    return eng.mul_series(m);
}

SupersingularIndexResult supersingular_index(const WeierstrassCurve& curve, std::uint64_t p,
                                             long order) {
    if (p < 5) throw bad_input("supersingular_index: p >= 5");
    WeierstrassCurve E = curve;
    if (!curve.is_short_form()) {
        // complete the square/cube: y^2 = x^3 - 27 c4 x - 54 c6 (p >= 5)
        E = WeierstrassCurve::short_form(-27 * curve.c4(), -54 * curve.c6());
    }
    if (!E.has_integral_coefficients())
        throw bad_input("supersingular_index: integral model required");
    auto ctx = ZpCtx::make(BigInt(static_cast<unsigned long>(p)), 4);
    ZpSeries f = zp_mul_series(E, static_cast<long>(p), ctx, order);
    SupersingularIndexResult res;
    std::uint64_t j = reduced_j(E, p);
    res.exceptional_j = (j == 0 || j == 1728 % p);
    for (long i = 2; i < f.size(); ++i) {
        if (f.coeff_valuation(i) == 0) {
            res.index = i;
            return res;
        }
    }
    throw computation_error(
        "supersingular_index: no unit coefficient below truncation order (order too small, or the "
        "reduction is not of height <= 2)");
}

AlphaInvariant alpha(long v_K_of_p, long q) {
    if (v_K_of_p < 1) throw bad_input("alpha: v_K(p) >= 1");
    if (q < 2) throw bad_input("alpha: q >= 2");
    AlphaInvariant a;
    a.v_K_of_p = v_K_of_p;
    a.q = q;
    a.value = BigRational(v_K_of_p, q - 1);
    a.value.canonicalize();
    return a;
}

ZpSeries zp_weierstrass_prepare(const ZpSeries& f, long s, long guard_degree, ZpSeries* unit_out) {
    const ZpCtxPtr& ctx = f.ctx();
    long D = std::min<long>(guard_degree, f.size() - 1);
    if (D < 2 * s) throw bad_input("zp_weierstrass_prepare: guard degree < 2 s(f)");
    ZpSeries fd = f.truncated(D + 1);
    // F0 = X^s; iterate F += (rem * q^{-1} mod F) where f = q F + rem
    ZpSeries F = ZpSeries::zeros(ctx, s + 1);
    F.at(s) = 1;
    ZpSeries q, rem;
    for (long it = 0; it <= 3 * ctx->K + 8; ++it) {
        zp_divmod_monic(fd, F, q, rem);
        if (rem.is_zero()) break;
        ZpSeries qinv = zp_inverse(q, q.size());
        ZpSeries corr = zp_mul(rem, qinv, D + 1);
        ZpSeries cq, cr;
        zp_divmod_monic(corr, F, cq, cr);
        cr.resize(s + 1);
        F = F + cr;
        if (it == 3 * ctx->K + 8)
            throw computation_error("zp_weierstrass_prepare: iteration did not stabilize");
    }
    if (unit_out) {
        zp_divmod_monic(fd, F, q, rem);
        *unit_out = q;
    }
    return F;
}

namespace {

PadicElement residue_to_padic(const ZpSeries& s, long i, const PadicCtxPtr& pctx) {
    return PadicElement::from_integer(pctx, s[i]).with_context(pctx);
}

}  // namespace

PreparationResult weierstrass_prepare(const std::vector<PadicElement>& f, long guard_degree) {
    if (f.empty()) throw bad_input("weierstrass_prepare: empty series");
    PadicCtxPtr pctx;
    for (const auto& c : f)
        if (c.context()) {
            pctx = c.context();
            break;
        }
    if (!pctx) throw bad_input("weierstrass_prepare: no p-adic context on input");
    if (pctx->f != 1) throw bad_input("weierstrass_prepare: unramified degree 1 only");
    long K = pctx->N;
    auto zctx = ZpCtx::make(pctx->p, K);
    std::vector<BigInt> coeffs;
    long s = -1;
    for (size_t i = 0; i < f.size(); ++i) {
        PadicElement c = f[i].with_context(pctx);
        if (c.is_zero_to_precision()) {
            coeffs.emplace_back(0);
            continue;
        }
        Valuation v = c.valuation();
        if (v.value() < 0) throw bad_input("weierstrass_prepare: integral series required");
        BigInt val = c.unit_part().empty() ? BigInt(0) : c.unit_part()[0];
        coeffs.push_back(pow_int(pctx->p, static_cast<unsigned long>(v.value())) * val);
        if (s < 0 && v.value() == 0) s = static_cast<long>(i);
    }
    if (s < 0) throw bad_input("weierstrass_prepare: no unit coefficient found");
    if (2 * s > static_cast<long>(f.size()) - 1)
        throw bad_input("weierstrass_prepare: s(f) too large for the series length");
    ZpSeries fz(zctx, std::move(coeffs));
    guard_degree = std::min<long>(guard_degree, fz.size() - 1);
    ZpSeries unit;
    ZpSeries F = zp_weierstrass_prepare(fz, s, guard_degree, &unit);
    PreparationResult out;
    out.s = s;
    out.accuracy = std::min<long>(K, guard_degree / std::max<long>(s, 1));
    for (long i = 0; i <= s; ++i) out.F.push_back(residue_to_padic(F, i, pctx));
    for (long i = 0; i < std::min<long>(unit.size(), s + 1); ++i)
        out.unit_head.push_back(residue_to_padic(unit, i, pctx));
    return out;
}

PreparedFactorization eisenstein_tower(const WeierstrassCurve& curve, std::uint64_t p, long n_max,
                                       const TowerOptions& opt) {
    if (n_max < 1 || n_max > opt.max_n)
        throw bad_input("eisenstein_tower: n beyond configured cap");
    if (p < 5) throw bad_input("eisenstein_tower: p >= 5");
    if (!is_supersingular(curve, p, 1))
        throw bad_input("eisenstein_tower: supersingular reduction required");
    long q = static_cast<long>(p) * static_cast<long>(p);
    long target = opt.target_precision;
    long K = target + 4;  // slack for the division/cross-check arithmetic
    auto zctx = ZpCtx::make(BigInt(static_cast<unsigned long>(p)), K);
    auto pctx = PadicContext::make(BigInt(static_cast<unsigned long>(p)), 1, K);

    PreparedFactorization out;
    out.p = p;
    out.n = n_max;
    out.precision = target;

    std::vector<ZpSeries> Fs;  // F_1 .. F_n
    long m = static_cast<long>(p);
    long s = q;
    for (long lvl = 1; lvl <= n_max; ++lvl) {
        long D = target * s;
        long order = D + 4;
        ZpSeries f = zp_mul_series(curve, m, zctx, order);
        // sanity: linear coefficient is p^lvl
        if ((f[1] - pow_int(BigInt(static_cast<unsigned long>(p)), lvl)) % zctx->M != 0)
            throw computation_error("eisenstein_tower: [p^n](T) linear term mismatch");
        ZpSeries F = zp_weierstrass_prepare(f, s, D, nullptr);
        Fs.push_back(F);
        if (lvl == n_max) {
            ZpSeries unit;
            zp_divmod_monic(f.truncated(D + 1), F, unit, f);  // reuse f as scratch remainder
            out.s = s;
            for (long i = 0; i <= s; ++i) out.F.push_back(residue_to_padic(F, i, pctx));
            for (long i = 0; i < std::min<long>(unit.size(), s + 1); ++i)
                out.unit_head.push_back(residue_to_padic(unit, i, pctx));
        }
        m *= static_cast<long>(p);
        s *= q;
    }

    // Eisenstein factors g_k = F_k / F_{k-1}; F_0 = X
    BigInt ptarget = pow_int(BigInt(static_cast<unsigned long>(p)), target);
    for (long lvl = 1; lvl <= n_max; ++lvl) {
        ZpSeries quotient, rem;
        if (lvl == 1) {
            // divide by X
            const ZpSeries& F1 = Fs[0];
            if (F1[0] != 0) throw computation_error("eisenstein_tower: F_1(0) != 0");
            quotient = ZpSeries::zeros(zctx, F1.size() - 1);
            for (long i = 1; i < F1.size(); ++i) quotient.at(i - 1) = F1[i];
        } else {
            zp_divmod_monic(Fs[lvl - 1], Fs[lvl - 2], quotient, rem);
            for (long i = 0; i < rem.size(); ++i)
                if (rem[i] % ptarget != 0)
                    throw computation_error(
                        "eisenstein_tower: F_{n-1} does not divide F_n to the target precision");
        }
        PreparedLevel L;
        L.level = lvl;
        L.degree = quotient.size() - 1;
        // Eisenstein test: exact valuations (p-adically exact below the cap)
        if (quotient[L.degree] != 1)
            throw computation_error("eisenstein_tower: factor not monic");
        if (quotient.coeff_valuation(0) != 1)
            throw computation_error("eisenstein_tower: constant term valuation != 1");
        for (long i = 0; i < L.degree; ++i)
            if (quotient.coeff_valuation(i) < 1)
                throw computation_error("eisenstein_tower: factor not Eisenstein");
        for (long i = 0; i <= L.degree; ++i) L.g.push_back(residue_to_padic(quotient, i, pctx));
        out.levels.push_back(std::move(L));
    }

    // Newton polygon of F_n from exact coefficient valuations
    std::vector<std::pair<long, BigRational>> pts;
    const ZpSeries* Ftop = &Fs.back();
    for (long i = 0; i <= out.s; ++i) {
        long v = Ftop->coeff_valuation(i);
        if (v < K) pts.emplace_back(i, BigRational(v));
    }
    out.polygon = newton_polygon(std::move(pts));
    return out;
}

std::vector<TorsionValuationLevel> torsion_valuations(const PreparedFactorization& pf) {
    long q = static_cast<long>(pf.p) * static_cast<long>(pf.p);
    if (pf.polygon.zero_root_count != 1)
        throw computation_error("torsion_valuations: expected exactly one root at zero");
    std::vector<TorsionValuationLevel> out;
    const auto& segs = pf.polygon.segments;
    if (static_cast<long>(segs.size()) != pf.n)
        throw computation_error("torsion_valuations: polygon segment count != tower depth");
    // hull order has decreasing root valuations: level k has valuation
    // 1/(q^{k-1}(q-1)) and multiplicity q^{k-1}(q-1)
    long expected_mult = q - 1;
    for (long k = 1; k <= pf.n; ++k) {
        const auto& seg = segs[k - 1];
        BigRational expect(1, expected_mult);
        expect.canonicalize();
        if (seg.root_valuation != expect || seg.length != expected_mult)
            throw computation_error("torsion_valuations: polygon inconsistent with predicted slopes");
        out.push_back({k, expect, seg.length});
        expected_mult *= q;
    }
    long total = 1;
    for (const auto& t : out) total += t.multiplicity;
    long expect_total = 1;
    for (long k = 0; k < pf.n; ++k) expect_total *= q;
    if (total != expect_total)
        throw computation_error("torsion_valuations: multiplicities do not sum to p^{2n}");
    return out;
}

}  // namespace heightgap
