#pragma once

// The formal group of a Weierstrass curve: w/x/y series, the two-variable
// group law, negation, multiplication by m, the supersingular index of
// [p](T), the alpha invariant, Weierstrass preparation of [p^n](T) and the
// Eisenstein factor tower with its Newton polygon.
//
// Two series backends are used: exact rational Series1/Series2 for the
// group-law axioms and small [m], and the dense mod-p^K engine for the
// large series of the tower.

#include <optional>
#include <vector>

#include "heightgap/curve.hpp"
#include "heightgap/newton_polygon.hpp"
#include "heightgap/padic.hpp"
#include "heightgap/series.hpp"
#include "heightgap/zp_series.hpp"

namespace heightgap {

struct LaurentQ {
    long shift = 0;  // lowest exponent; series coefficient i sits at T^(shift+i)
    QSeries1 tail{1};
};

struct FormalGroupData {
    WeierstrassCurve curve;
    long order;
    QSeries1 w;       // w(Z) = Z^3 (1 + ...)
    LaurentQ x;       // Z/w, pole order 2
    LaurentQ y;       // -1/w, pole order 3
    QSeries2 F;       // group law, total-degree truncated
    QSeries1 neg;     // i(T) with F(T, i(T)) = 0
};

// Fixed point of w = f(Z, w); coefficients are integers in Z[a1..a6]
// specialized at the curve.
QSeries1 build_w_series(const WeierstrassCurve& curve, long order);

FormalGroupData build_group_law(const WeierstrassCurve& curve, long order);

struct MulSeries {
    long m = 0;
    QSeries1 series{1};
    std::optional<long> supersingular_index;  // set by the mod-p analysis
};

// [m](T) by binary chains of F-doubling; the defining recurrence
// [m+1](T) = F([m]T, T) is exercised separately as a test oracle.
MulSeries mul_by_m(const FormalGroupData& fg, long m);
// The naive recurrence, for cross-checking small m.
QSeries1 mul_by_m_recurrence(const FormalGroupData& fg, long m);

// ---- fast mod-p^K engine -------------------------------------------------

// [m](T) mod p^K to `order` coefficients via the division-polynomial
// route evaluated on Laurent series.  Integral curve, good reduction at p.
ZpSeries zp_mul_series(const WeierstrassCurve& curve, long m, const ZpCtxPtr& ctx, long order);

struct SupersingularIndexResult {
    long index = 0;          // min { i >= 2 : d_i a unit }
    bool exceptional_j = false;  // reduced j in {0, 1728}: p^2 law downgraded to warning
};

// Analyses [p](T) over Z_p; `order` must exceed p^2 for a supersingular
// curve, else the result is an indeterminate error.
SupersingularIndexResult supersingular_index(const WeierstrassCurve& curve, std::uint64_t p,
                                             long order);

struct AlphaInvariant {
    long v_K_of_p = 1;
    long q = 0;
    BigRational value;  // v_K(p) / (q - 1)
};

AlphaInvariant alpha(long v_K_of_p, long q);

struct PreparedLevel {
    long level = 0;                      // n
    std::vector<PadicElement> g;         // Eisenstein factor g_n, monic, low->high
    long degree = 0;                     // q^{n-1}(q-1)
};

struct PreparedFactorization {
    std::uint64_t p = 0;
    long n = 0;                          // tower depth
    long s = 0;                          // p^{2n}
    long precision = 0;                  // coefficients known mod p^precision
    std::vector<PadicElement> F;         // distinguished polynomial F_n, monic degree s
    std::vector<PadicElement> unit_head; // leading coefficients of the unit cofactor
    std::vector<PreparedLevel> levels;   // g_1 .. g_n
    NewtonPolygon polygon;               // of F_n
};

// Weierstrass preparation of a single series f (over p-adics with
// context ctx): f = u*F with F monic distinguished of degree s(f).
// guard_degree D controls the truncation; the result is accurate mod
// p^{N'} with the documented N'(D) = floor(D / s).
struct PreparationResult {
    long s = 0;
    long accuracy = 0;  // N'(D)
    std::vector<PadicElement> F;
    std::vector<PadicElement> unit_head;
};
PreparationResult weierstrass_prepare(const std::vector<PadicElement>& f, long guard_degree);

// Internal flat-engine preparation: f mod p^K, returns monic F of degree s.
ZpSeries zp_weierstrass_prepare(const ZpSeries& f, long s, long guard_degree, ZpSeries* unit_out);

struct TowerOptions {
    long target_precision = 44;  // coefficients of F_n certified mod p^target
    long max_n = 2;
};

// The Appendix-A tower for the curve at p: F_n, Eisenstein factors,
// polygon.  Requires good supersingular reduction at p.
PreparedFactorization eisenstein_tower(const WeierstrassCurve& curve, std::uint64_t p, long n_max,
                                       const TowerOptions& opt = {});

struct TorsionValuationLevel {
    long level = 0;
    BigRational valuation;  // 1/(q^{k-1}(q-1))
    long multiplicity = 0;
};

// Root valuations read off the polygon of F_n; signals inconsistency if
// the polygon does not match the predicted slopes.
std::vector<TorsionValuationLevel> torsion_valuations(const PreparedFactorization& pf);

}  // namespace heightgap
