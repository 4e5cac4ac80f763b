#include "heightgap/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "heightgap/canonical.hpp"
#include "heightgap/heights.hpp"

namespace heightgap {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::ostringstream msg;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << "FAILED: " << what << "; ";
        }
    }
    template <class T>
    void expect_eq(const T& a, const T& b, const std::string& what) {
        if (!(a == b)) {
            ok = false;
            msg << "FAILED: " << what << "; ";
        }
    }
    void expect_close(double a, double b, double tol, const std::string& what) {
        if (!(std::fabs(a - b) <= tol)) {
            ok = false;
            msg << "FAILED: " << what << " (|" << a << " - " << b << "| > " << tol << "); ";
        }
    }
};

std::vector<WeierstrassCurve> axiom_fixture_curves() {
    return {
        WeierstrassCurve(0, 0, 1, -1, 0),            // 37a
        WeierstrassCurve(0, 1, 1, -2, 0),            // 389a
        WeierstrassCurve(0, 0, 1, -7, 6),            // 5077a
        WeierstrassCurve::short_form(2, 3),
        WeierstrassCurve::short_form(1, 1),
    };
}

// ---- tiny trivariate series for the associativity check -------------------

using Key3 = std::array<long, 3>;
using Ser3 = std::map<Key3, BigRational>;

Ser3 s3_mul(const Ser3& a, const Ser3& b, long order) {
    Ser3 r;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            Key3 k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
            if (k[0] + k[1] + k[2] >= order) continue;
            auto& slot = r[k];
            slot += va * vb;
            if (slot == 0) r.erase(k);
        }
    return r;
}

Ser3 s3_add(Ser3 a, const Ser3& b) {
    for (const auto& [k, v] : b) {
        auto& slot = a[k];
        slot += v;
        if (slot == 0) a.erase(k);
    }
    return a;
}

// substitute two trivariate arguments into a bivariate series
Ser3 s3_subst(const QSeries2& F, const Ser3& A, const Ser3& B, long order) {
    // group F by first index, Horner in A with rows evaluated at B
    std::map<long, std::map<long, BigRational>> rows;
    for (const auto& [k, v] : F.coeffs()) rows[k.first][k.second] = v;
    // powers of B cache
    std::vector<Ser3> bpow = {Ser3{{Key3{0, 0, 0}, BigRational(1)}}};
    auto bp = [&](long e) -> const Ser3& {
        while (static_cast<long>(bpow.size()) <= e) bpow.push_back(s3_mul(bpow.back(), B, order));
        return bpow[e];
    };
    Ser3 res;
    long top = rows.empty() ? -1 : rows.rbegin()->first;
    for (long i = top; i >= 0; --i) {
        if (i != top) res = s3_mul(res, A, order);
        auto it = rows.find(i);
        if (it != rows.end()) {
            Ser3 row;
            for (const auto& [j, v] : it->second)
                row = s3_add(row, [&] {
                    Ser3 t;
                    for (const auto& [k, w] : bp(j)) t[k] = w * v;
                    return t;
                }());
            res = s3_add(res, row);
        }
    }
    return res;
}

// ---- criteria --------------------------------------------------------------

CriterionResult criterion1_group_law_axioms() {
    CriterionResult r{1, "formal group axioms (5 curves, total order 8)", false, "", 0, 5000};
    Check c;
    const long O = 8;
    for (const auto& E : axiom_fixture_curves()) {
        FormalGroupData fg = build_group_law(E, O);
        // a) F = X + Y + (deg >= 2)
        c.expect(fg.F.get(1, 0) == 1 && fg.F.get(0, 1) == 1 && fg.F.get(0, 0) == 0,
                 "axiom (a) on " + E.str());
        // c) symmetry
        c.expect(fg.F == fg.F.transposed(), "axiom (c) on " + E.str());
        // d) F(X, 0) = X and F(0, Y) = Y
        bool d_ok = true;
        for (const auto& [k, v] : fg.F.coeffs()) {
            if (k.second == 0 && !(k.first == 1 && v == 1)) d_ok = false;
            if (k.first == 0 && !(k.second == 1 && v == 1)) d_ok = false;
        }
        c.expect(d_ok, "axiom (d) on " + E.str());
        // b) associativity mod total degree 8
        Ser3 X{{Key3{1, 0, 0}, BigRational(1)}};
        Ser3 Y{{Key3{0, 1, 0}, BigRational(1)}};
        Ser3 Z{{Key3{0, 0, 1}, BigRational(1)}};
        Ser3 FYZ = s3_subst(fg.F, Y, Z, O);
        Ser3 lhs = s3_subst(fg.F, X, FYZ, O);
        Ser3 FXY = s3_subst(fg.F, X, Y, O);
        Ser3 rhs = s3_subst(fg.F, FXY, Z, O);
        c.expect(lhs == rhs, "axiom (b) associativity on " + E.str());
        // negation: F(T, i(T)) = 0
        QSeries1 z1 = series_compose2(fg.F, QSeries1::identity(O), fg.neg);
        c.expect(z1.is_zero(), "F(T, i(T)) = 0 on " + E.str());
    }
    r.pass = c.ok;
    r.details = c.ok ? "axioms a-d hold exactly at order 8 on all 5 curves" : c.msg.str();
    return r;
}

CriterionResult criterion2_supersingular_index(const RunConfig& cfg) {
    CriterionResult r{2, "Lemma-2.3.1 index p^2 on scan-produced supersingular pairs", false, "",
                      0, 120000};
    Check c;
    struct Pair {
        WeierstrassCurve E;
        std::uint64_t p;
    };
    std::vector<Pair> ss = {
        {WeierstrassCurve(0, 0, 1, -1, 0), 17},
        {WeierstrassCurve(0, 0, 1, -1, 0), 19},
        {WeierstrassCurve::short_form(1, 1), 17},
        {WeierstrassCurve::short_form(-4, 4), 13},
    };
    // fixtures really are scan-produced: re-scan and check the verdicts
    ScanCriteria crit;
    for (const auto& [E, p] : ss) {
        auto scan = supersingular_scan(E, 5, 23, crit);
        bool found = false;
        for (const auto& s : scan)
            if (s.p == p && s.verdict == ScanVerdict::kAccepted) found = true;
        c.expect(found, "scan fixture (" + E.str() + ", p=" + std::to_string(p) + ") accepted");
    }
    c.expect(ss.size() >= 4, "at least 4 supersingular pairs");
    for (const auto& [E, p] : ss) {
        long order = static_cast<long>(p) * static_cast<long>(p) + 2;
        c.expect(order <= cfg.series_order_cap, "order within series cap");
        auto idx = supersingular_index(E, p, order);
        c.expect(idx.index == static_cast<long>(p * p),
                 "index == p^2 for (" + E.str() + ", " + std::to_string(p) + ")");
        c.expect(!idx.exceptional_j, "reduced j outside {0,1728}");
    }
    // ordinary controls
    std::vector<Pair> ord = {{WeierstrassCurve(0, 0, 1, -1, 0), 13},
                             {WeierstrassCurve(0, 1, 1, -2, 0), 11}};
    for (const auto& [E, p] : ord) {
        c.expect(!is_supersingular(E, p, 1), "control pair is ordinary");
        auto idx = supersingular_index(E, p, static_cast<long>(p) + 4);
        c.expect(idx.index == static_cast<long>(p),
                 "ordinary index == p for (" + E.str() + ", " + std::to_string(p) + ")");
    }
    r.pass = c.ok;
    r.details = c.ok ? "4 supersingular pairs give index p^2; ordinary controls give index p"
                     : c.msg.str();
    return r;
}

// shared tower computation (criteria 3, 4, 10)
const PreparedFactorization& tower_fixture(long n) {
    static std::map<long, PreparedFactorization> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        TowerOptions opt;
        opt.target_precision = 44;
        opt.max_n = 2;
        it = cache.emplace(n, eisenstein_tower(WeierstrassCurve::short_form(0, 1), 5, n, opt))
                 .first;
    }
    return it->second;
}

CriterionResult criterion3_tower() {
    CriterionResult r{3, "Appendix-A tower at p=5, n<=2", false, "", 0, 300000};
    Check c;
    const auto& pf1 = tower_fixture(1);
    const auto& pf2 = tower_fixture(2);
    c.expect_eq<long>(pf1.s, 25, "deg F_1 = 25");
    c.expect_eq<long>(pf2.s, 625, "deg F_2 = 625");
    // Eisenstein factors with constant-term valuation exactly 1
    for (const auto* pf : {&pf1, &pf2}) {
        for (const auto& L : pf->levels) {
            c.expect(L.g.back().valuation() == Valuation::of(0) && L.g.back().unit_part()[0] == 1,
                     "g monic");
            c.expect(L.g.front().valuation() == Valuation::of(1), "v(const term of g) = 1");
            bool eis = true;
            for (long i = 0; i + 1 < static_cast<long>(L.g.size()); ++i) {
                Valuation v = L.g[i].valuation();
                if (!(Valuation::of(1) < v || v == Valuation::of(1))) eis = false;
            }
            c.expect(eis, "g_" + std::to_string(L.level) + " Eisenstein");
        }
    }
    // Newton slopes exactly {1/24} and {1/24, 1/600}
    auto slopes_of = [](const PreparedFactorization& pf) {
        std::vector<BigRational> s;
        for (const auto& seg : pf.polygon.segments) s.push_back(seg.root_valuation);
        return s;
    };
    auto s1 = slopes_of(pf1), s2 = slopes_of(pf2);
    c.expect(s1.size() == 1 && s1[0] == BigRational(1, 24), "polygon of F_1 = {1/24}");
    c.expect(s2.size() == 2 && s2[0] == BigRational(1, 24) && s2[1] == BigRational(1, 600),
             "polygon of F_2 = {1/24, 1/600}");
    // F_2 mod F_1 leaves zero remainder mod p^40: independent re-division
    {
        BigInt p40 = pow_int(BigInt(5), 40);
        BigInt pK = pow_int(BigInt(5), static_cast<unsigned long>(pf2.precision + 4));
        auto coeffs = [&](const std::vector<PadicElement>& F) {
            std::vector<BigInt> v;
            for (const auto& e : F) {
                if (e.is_zero_to_precision())
                    v.emplace_back(0);
                else
                    v.push_back(pow_int(BigInt(5), static_cast<unsigned long>(e.valuation().value())) *
                                e.unit_part()[0] % pK);
            }
            return v;
        };
        std::vector<BigInt> F2 = coeffs(pf2.F), F1 = coeffs(pf1.F);
        for (long i = static_cast<long>(F2.size()) - 1; i >= static_cast<long>(F1.size()) - 1; --i) {
            BigInt cc = F2[i] % pK;
            if (cc == 0) continue;
            F2[i] = 0;
            for (size_t j = 0; j + 1 < F1.size(); ++j) {
                F2[i - (F1.size() - 1) + j] = (F2[i - (F1.size() - 1) + j] - cc * F1[j]) % pK;
            }
        }
        bool zero40 = true;
        for (size_t i = 0; i + 1 < F1.size(); ++i) {
            BigInt rem = F2[i] % p40;
            if (rem < 0) rem += p40;
            if (rem != 0) zero40 = false;
        }
        c.expect(zero40, "F_2 mod F_1 == 0 (mod 5^40)");
    }
    r.pass = c.ok;
    r.details = c.ok ? "degrees 25/625, Eisenstein factors, slopes {1/24},{1/24,1/600}, division "
                       "remainder 0 mod 5^40"
                     : c.msg.str();
    return r;
}

CriterionResult criterion4_torsion_counts() {
    CriterionResult r{4, "|F[p^n]| = p^{2n} from factor degrees", false, "", 0, 10000};
    Check c;
    const auto& pf2 = tower_fixture(2);
    long total = 1;  // the zero root
    for (const auto& L : pf2.levels) total += L.degree;
    c.expect_eq<long>(total, 625, "1 + sum deg g_k = 5^4");
    const auto& pf1 = tower_fixture(1);
    long t1 = 1;
    for (const auto& L : pf1.levels) t1 += L.degree;
    c.expect_eq<long>(t1, 25, "1 + deg g_1 = 5^2");
    auto tv = torsion_valuations(pf2);
    c.expect(tv.size() == 2 && tv[0].multiplicity == 24 && tv[1].multiplicity == 600,
             "torsion valuations read off the polygon");
    r.pass = c.ok;
    r.details = c.ok ? "torsion counts 25 and 625 match p^{2n}" : c.msg.str();
    return r;
}

CriterionResult criterion5_claim_2317() {
    CriterionResult r{5, "Claim 2.3.17 exhaustive + Kummer==Legendre", false, "", 0, 30000};
    Check c;
    for (long p : {5L, 7L, 11L})
        for (unsigned m : {1u, 2u})
            c.expect(check_claim_2_3_17(BigInt(p), m),
                     "claim holds for p=" + std::to_string(p) + ", m=" + std::to_string(m));
    // regression witness: the inequality genuinely fails for p = 2 (at a = 2);
    // for p = 3 the Kummer identity shows it still holds
    auto w2 = claim_2_3_17_first_failure(BigInt(2), 1);
    c.expect(w2.has_value() && *w2 == 2, "p=2 fails first at a=2");
    c.expect(check_claim_2_3_17(BigInt(3), 1) && check_claim_2_3_17(BigInt(3), 2),
             "p=3 satisfies the inequality");
    std::mt19937_64 rng(20240817u);
    for (int i = 0; i < 10000; ++i) {
        static const long ps[] = {2, 3, 5, 7};
        BigInt p(ps[rng() % 4]);
        BigInt m(static_cast<unsigned long>(1 + rng() % 5000));
        BigInt a(static_cast<unsigned long>(rng() % (m.get_ui() + 1)));
        BigInt legendre =
            vp_factorial_legendre(m, p) - vp_factorial_legendre(a, p) - vp_factorial_legendre(m - a, p);
        if (BigInt(vp_binomial_kummer(m, a, p)) != legendre) {
            c.expect(false, "Kummer != Legendre at m=" + m.get_str() + ", a=" + a.get_str() +
                                ", p=" + p.get_str());
            break;
        }
    }
    r.pass = c.ok;
    r.details = c.ok ? "exhaustive truth for p in {5,7,11}, m in {1,2}; 10^4 random triples agree "
                       "with the Legendre oracle; p=2 witness a=2 recorded"
                     : c.msg.str();
    return r;
}

CriterionResult criterion6_weil_heights(const RunConfig& cfg) {
    CriterionResult r{6, "Weil heights: 2^{1/n}, cyclotomics, power law", false, "", 0, 60000};
    Check c;
    for (long n = 1; n <= 12; ++n) {
        IntPoly f(n + 1, BigInt(0));
        f[0] = -2;
        f[n] = 1;
        HeightValue h = weil_height(AlgebraicNumber(f));
        c.expect_close(h.value, std::log(2.0) / n, cfg.tol.weil_pow2,
                       "h(2^{1/" + std::to_string(n) + "})");
        c.expect(h.error_bound < cfg.tol.weil_pow2, "error bound small");
    }
    for (unsigned L : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 12u, 15u, 16u, 36u}) {
        HeightValue h = weil_height(AlgebraicNumber(cyclotomic(L)));
        c.expect(std::fabs(h.value) <= cfg.tol.cyclotomic_zero,
                 "cyclotomic Phi_" + std::to_string(L) + " has height 0");
        c.expect(is_root_of_unity(AlgebraicNumber(cyclotomic(L))), "Phi_L detected as root of unity");
    }
    c.expect(!is_root_of_unity(AlgebraicNumber(IntPoly{-2, 0, 1})), "sqrt(2) is not a root of unity");
    // power identity on a corpus
    std::vector<AlgebraicNumber> corpus;
    corpus.emplace_back(IntPoly{-2, 0, 0, 1}, "2^(1/3)");
    corpus.emplace_back(IntPoly{-1, -1, 1}, "golden");
    corpus.emplace_back(IntPoly{-3, 2}, "3/2");
    corpus.emplace_back(IntPoly{-2, 0, 1}, "sqrt2");
    for (const auto& a : corpus) {
        HeightValue ha = weil_height(a);
        for (long k : {2L, 3L, 4L, -2L}) {
            AlgebraicNumber ak = power_of(a, k);
            HeightValue hk = weil_height(ak);
            double tol = 2 * (hk.error_bound + std::labs(k) * ha.error_bound) + 1e-12;
            c.expect_close(hk.value, std::labs(k) * ha.value, tol,
                           "h(" + a.label() + "^" + std::to_string(k) + ")");
        }
    }
    auto law = height_law_suite(corpus);
    c.expect(law.all_hold(), "height law suite holds");
    r.pass = c.ok;
    r.details = c.ok ? "(log 2)/n to 1e-10 for n <= 12; cyclotomics 0 to 1e-12; |k| h law on corpus"
                     : c.msg.str();
    return r;
}

CriterionResult criterion7_canonical_heights(const RunConfig& cfg) {
    CriterionResult r{7, "canonical heights: dual-route agreement, laws, torsion", false, "", 0,
                      120000};
    Check c;
    WeierstrassCurve e37(0, 0, 1, -1, 0), e389(0, 1, 1, -2, 0), e5077(0, 0, 1, -7, 6);
    WeierstrassCurve ex31 = WeierstrassCurve::short_form(1, 1);
    struct Fix {
        const WeierstrassCurve* E;
        CurvePoint P;
    };
    std::vector<Fix> fixtures;
    auto pt = [](long x, long y) { return CurvePoint::affine(BigRational(x), BigRational(y)); };
    fixtures.push_back({&e37, pt(0, 0)});
    fixtures.push_back({&e37, pt(1, 0)});
    fixtures.push_back({&e37, pt(2, 2)});
    fixtures.push_back({&e37, pt(-1, -1)});
    fixtures.push_back({&e37, pt(6, 14)});
    fixtures.push_back({&e389, pt(0, 0)});
    fixtures.push_back({&e389, pt(1, 0)});
    fixtures.push_back({&e389, pt(-1, 1)});
    fixtures.push_back({&e5077, pt(0, 2)});
    fixtures.push_back({&e5077, pt(1, 0)});
    fixtures.push_back({&e5077, pt(2, 0)});
    fixtures.push_back({&e5077, pt(3, 3)});
    fixtures.push_back({&ex31, pt(0, 1)});
    fixtures.push_back({&ex31, CurvePoint::affine(BigRational(1, 4), BigRational(-9, 8))});
    c.expect(fixtures.size() >= 10, ">= 10 fixture points");
    int curves_used = 4;
    c.expect(curves_used >= 3, ">= 3 curves");
    for (const auto& f : fixtures) {
        c.expect(on_curve(*f.E, f.P), "fixture on curve");
        auto dbl = canonical_height_doubling(*f.E, f.P, 14, 1e-9);
        auto loc = canonical_height_local_sum(*f.E, f.P);
        c.expect(!dbl.truncated_by_budget, "doubling within budget");
        c.expect(dbl.value > 1e-4, "fixture is non-torsion");
        c.expect_close(dbl.value, loc.value, cfg.tol.doubling_vs_localsum,
                       "doubling vs local sum at " + f.E->str());
    }
    // parallelogram law
    struct PairFix {
        const WeierstrassCurve* E;
        CurvePoint P, Q;
    };
    std::vector<PairFix> pairs = {{&e37, pt(0, 0), pt(1, 0)},
                                  {&e37, pt(0, 0), pt(2, 2)},
                                  {&e5077, pt(0, 2), pt(1, 0)},
                                  {&e5077, pt(1, 0), pt(2, 0)}};
    for (const auto& pf : pairs) {
        auto h = [&](const CurvePoint& P) {
            if (P.is_infinity()) return 0.0;
            return canonical_height_local_sum(*pf.E, P).value;
        };
        CurvePoint S = point_add(*pf.E, pf.P, pf.Q);
        CurvePoint D = point_add(*pf.E, pf.P, point_neg(*pf.E, pf.Q));
        double resid = h(S) + h(D) - 2 * h(pf.P) - 2 * h(pf.Q);
        c.expect(std::fabs(resid) <= cfg.tol.parallelogram,
                 "parallelogram law on " + pf.E->str());
    }
    // torsion
    {
        WeierstrassCurve em = WeierstrassCurve::short_form(-1, 0);
        auto d = canonical_height_doubling(em, pt(0, 0), 14, 1e-12);
        c.expect(std::fabs(d.value) <= cfg.tol.torsion_zero, "2-torsion doubling exactly 0");
        auto l = canonical_height_local_sum(em, pt(0, 0));
        c.expect(std::fabs(l.value) <= cfg.tol.torsion_zero, "2-torsion local sum 0");
        WeierstrassCurve e11(0, -1, 1, -10, -20);  // 11a1, (5,5) has order 5
        auto d5 = canonical_height_doubling(e11, pt(5, 5), 14, 1e-12);
        c.expect(std::fabs(d5.value) <= cfg.tol.torsion_zero, "5-torsion doubling ~ 0");
    }
    // m^2 scaling
    {
        CurvePoint P = pt(0, 0);
        double h1 = canonical_height_local_sum(e37, P).value;
        for (long m : {2L, 3L}) {
            double hm = canonical_height_local_sum(e37, point_mul(e37, P, m)).value;
            c.expect_close(hm, m * m * h1, m * m * cfg.tol.m2_scaling,
                           "hhat([" + std::to_string(m) + "]P) = m^2 hhat(P)");
        }
    }
    r.pass = c.ok;
    r.details = c.ok ? "14 fixtures agree across methods to 1e-6; parallelogram, torsion and "
                       "m^2-scaling laws hold"
                     : c.msg.str();
    return r;
}

CriterionResult criterion8_haar(const RunConfig& cfg) {
    CriterionResult r{8, "Haar integral of the archimedean local height", false, "", 0, 120000};
    Check c;
    c.expect(b2_inner_integral_exact() == 0, "int_0^1 b2 = 0 exactly");
    WeierstrassCurve e37(0, 0, 1, -1, 0);
    Uniformization u = uniformize(e37);
    double prev = 1e9;
    double val256 = 0;
    for (int g : {64, 128, 256}) {
        auto res = haar_integral_check(u, g);
        c.expect(std::fabs(res.total) < std::fabs(prev),
                 "|integral| strictly shrinks at grid " + std::to_string(g));
        prev = res.total;
        if (g == 256) {
            val256 = res.total;
            c.expect(std::fabs(res.jensen_terms[0]) < cfg.tol.jensen_term,
                     "n=1 Jensen term < 1e-6 at grid 256");
        }
    }
    c.expect(std::fabs(val256) < cfg.tol.haar_total, "|integral| < 1e-4 at grid 256");
    std::ostringstream d;
    d << "integral at 256 = " << val256 << ", shrinking across 64/128/256; b2 term exactly 0";
    r.pass = c.ok;
    r.details = c.ok ? d.str() : c.msg.str();
    return r;
}

CriterionResult criterion9_constants(const RunConfig& cfg) {
    CriterionResult r{9, "explicit constants of Theorems 0.1/0.2", false, "", 0, 5000};
    Check c;
    GapParams params{1, 1, 5};
    GapReport g1 = thm01_constants(params, 0.2);
    c.expect(g1.C1 == 6250.0, "C1 = 10 p^4 = 6250 exactly");
    double branch1 = std::log(5.0) / (2.0 * std::pow(5.0, 8));
    double branch2 = std::log(5.0 / 2.0) / (1.0 * 25 * 24 * 26);
    double b1 = 0, b2v = 0;
    for (const auto& e : g1.derivation) {
        if (e.name == "c2_ramified_branch") b1 = e.value;
        if (e.name == "c2_unramified_branch") b2v = e.value;
    }
    c.expect_close(b1, branch1, cfg.tol.constants_branch, "ramified c2 branch");
    c.expect_close(b2v, branch2, cfg.tol.constants_branch, "unramified c2 branch");
    c.expect(g1.c2 == std::min(b1, b2v), "c2 = min of the two branches");
    c.expect(g1.final_C > 0 && g1.final_C <= 1, "final_C in (0, 1]");
    // derivation chain reproduces itself
    for (size_t i = 0; i < g1.derivation.size(); ++i) {
        const auto& e = g1.derivation[i];
        if (e.formula == "(input)") continue;
        std::vector<DerivationEntry> env(g1.derivation.begin(), g1.derivation.begin() + i);
        c.expect(eval_formula(e.formula, env) == e.value,
                 "derivation '" + e.name + "' re-evaluates exactly");
    }
    c.expect_eq<long>(Q_of_n(1, 25), 600, "Q(1) = 600");
    c.expect_eq<long>(Q_of_n(2, 25), 25, "Q(2) = 25");
    c.expect_eq<long>(Q_of_n(7, 25), 25, "Q(7) = 25");
    c.expect(frey_rhs(1.0, 0.25) == 1024.0, "frey coefficient 4/delta^4 = 1024 exactly");
    EllipticGapReport g2 = thm02_constants(params, 1);
    c.expect(g2.amplification == BigInt(374400000), "amplification exactly 40 p^4 (w+1)(q-1)^2");
    c.expect(g2.epsilon > 0, "epsilon > 0");
    c.expect(galois_orbit_floor(5).factor == BigRational(1, 625), "p^{-4} floor at p=5");
    r.pass = c.ok;
    r.details = c.ok ? "C1 = 6250, both c2 branches to 1e-12, Q(1)=600, Q(2)=25, frey 1024, "
                       "amplification 374400000"
                     : c.msg.str();
    return r;
}

CriterionResult criterion10_crosslink() {
    CriterionResult r{10, "tower predictions vs computed factors", false, "", 0, 10000};
    Check c;
    const auto& pf2 = tower_fixture(2);
    for (long n : {1L, 2L}) {
        TowerPrediction t = tower_prediction(n, 5);
        BigInt prod = 1;
        for (const auto& L : pf2.levels)
            if (L.level <= n) prod *= L.degree;
        c.expect(t.degree == prod, "predicted degree equals product of g_k degrees (n=" +
                                       std::to_string(n) + ")");
        // break intervals vs polygon slopes: interval length = 1/root valuation
        for (const auto& b : t.breaks) {
            long len = b.interval_hi - b.interval_lo + 1;
            const auto& seg = pf2.polygon.segments[b.level - 1];
            c.expect(BigRational(1, len) == seg.root_valuation,
                     "interval [q^{k-1}, q^k-1] length matches slope at level " +
                         std::to_string(b.level));
            c.expect(len == seg.length, "interval length equals segment length");
        }
        // phi/psi inverse on a rational grid
        for (long num = 0; num <= 40; ++num) {
            BigRational u(7 * num, 5);
            u.canonicalize();
            c.expect(t.herbrand.psi(t.herbrand.phi(u)) == u, "phi/psi inverse at u");
        }
    }
    // App B identity segment
    HasseHerbrand rel = herbrand_relative_level(2, 25);
    c.expect(rel.phi(BigRational(624)) == BigRational(624), "phi(u) = u for u <= q^k - 1");
    c.expect(rel.psi(BigRational(624)) == BigRational(624), "psi(u) = u for u <= q^k - 1");
    c.expect(rel.phi(BigRational(625)) == BigRational(624) + BigRational(1, 25),
             "slope 1/q beyond the break");
    r.pass = c.ok;
    r.details = c.ok ? "degrees, break intervals and Herbrand functions all consistent"
                     : c.msg.str();
    return r;
}

}  // namespace

std::vector<std::string> acceptance_suite_names() { return {"all", "formal", "heights", "constants"}; }

std::vector<CriterionResult> run_acceptance(const std::string& suite, const RunConfig& cfg) {
    std::vector<int> wanted;
    if (suite == "all")
        wanted = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    else if (suite == "formal")
        wanted = {1, 2, 3, 4, 10};
    else if (suite == "heights")
        wanted = {6, 7, 8};
    else if (suite == "constants")
        wanted = {5, 9};
    else
        throw bad_input("run_acceptance: unknown suite '" + suite + "'");

    std::vector<CriterionResult> out;
    for (int id : wanted) {
        auto t0 = Clock::now();
        CriterionResult res;
        try {
            switch (id) {
                case 1: res = criterion1_group_law_axioms(); break;
                case 2: res = criterion2_supersingular_index(cfg); break;
                case 3: res = criterion3_tower(); break;
                case 4: res = criterion4_torsion_counts(); break;
                case 5: res = criterion5_claim_2317(); break;
                case 6: res = criterion6_weil_heights(cfg); break;
                case 7: res = criterion7_canonical_heights(cfg); break;
                case 8: res = criterion8_haar(cfg); break;
                case 9: res = criterion9_constants(cfg); break;
                case 10: res = criterion10_crosslink(); break;
            }
        } catch (const std::exception& e) {
            res.id = id;
            res.pass = false;
            res.details = std::string("exception: ") + e.what();
        }
        res.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (res.budget_ms > 0 && res.ms > res.budget_ms) {
            res.pass = false;
            res.details += " [runtime budget exceeded]";
        }
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace heightgap
