#pragma once

// Elliptic curves over Q: invariants, rational point arithmetic, reduction
// mod p, point counting over F_{p^f} by enumeration, supersingularity and
// the prime scan, and division polynomials.

#include <optional>
#include <string>
#include <vector>

#include "heightgap/exact.hpp"
#include "heightgap/fq.hpp"

namespace heightgap {

class WeierstrassCurve {
  public:
    // Long form [a1,a2,a3,a4,a6]; rejects singular curves.
    WeierstrassCurve(BigRational a1, BigRational a2, BigRational a3, BigRational a4,
                     BigRational a6);
    // Short form y^2 = x^3 + A x + B.
    static WeierstrassCurve short_form(const BigRational& A, const BigRational& B);

    const BigRational& a1() const { return a1_; }
    const BigRational& a2() const { return a2_; }
    const BigRational& a3() const { return a3_; }
    const BigRational& a4() const { return a4_; }
    const BigRational& a6() const { return a6_; }
    const BigRational& b2() const { return b2_; }
    const BigRational& b4() const { return b4_; }
    const BigRational& b6() const { return b6_; }
    const BigRational& b8() const { return b8_; }
    const BigRational& c4() const { return c4_; }
    const BigRational& c6() const { return c6_; }
    const BigRational& discriminant() const { return disc_; }
    const BigRational& j_invariant() const { return j_; }

    bool is_short_form() const { return a1_ == 0 && a2_ == 0 && a3_ == 0; }
    bool has_integral_coefficients() const;
    std::string str() const;

  private:
    BigRational a1_, a2_, a3_, a4_, a6_;
    BigRational b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

// Affine point or the identity O.
struct CurvePoint {
    std::optional<std::pair<BigRational, BigRational>> xy;

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(BigRational x, BigRational y) {
        return CurvePoint{std::make_pair(std::move(x), std::move(y))};
    }
    bool is_infinity() const { return !xy.has_value(); }
    const BigRational& x() const { return xy->first; }
    const BigRational& y() const { return xy->second; }
    bool operator==(const CurvePoint& o) const { return xy == o.xy; }
};

bool on_curve(const WeierstrassCurve& E, const CurvePoint& P);
CurvePoint point_neg(const WeierstrassCurve& E, const CurvePoint& P);
CurvePoint point_add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint point_mul(const WeierstrassCurve& E, const CurvePoint& P, long m);

struct ReducedCurve {
    std::uint64_t p = 0;
    unsigned f = 1;
    std::vector<FqElement> a_invariants;      // a1..a6 order: a1,a2,a3,a4,a6
    std::optional<std::uint64_t> point_count;  // |E(F_q)| including O
    std::optional<long> a_q;                   // |E(F_q)| - q - 1 (sign of Remark 1.3.3;
                                               // the negative of the usual trace)
};

// Good reduction at p required (integral coefficients, v_p(disc) = 0).
ReducedCurve reduce_curve(const WeierstrassCurve& E, std::uint64_t p, unsigned f);

// Exact |E(F_{p^f})| by enumeration, p >= 5, p^f <= 10^6.
ReducedCurve count_points(const WeierstrassCurve& E, std::uint64_t p, unsigned f);

bool is_supersingular(const WeierstrassCurve& E, std::uint64_t p, unsigned f);

// j-invariant of the reduction, as an element of F_p (f = 1 path).
std::uint64_t reduced_j(const WeierstrassCurve& E, std::uint64_t p);

struct ScanCriteria {
    unsigned degree_d = 1;   // [K:Q]; the executable path fixes 1
    unsigned local_f = 1;
    std::uint64_t prime_floor() const { return 1ULL << (degree_d + 2); }
};

enum class ScanVerdict {
    kAccepted,
    kBadReduction,
    kOrdinary,
    kJInvariantExceptional,  // reduced j in {0, 1728}
    kBelowFloor,
};

struct ScanResult {
    std::uint64_t p;
    std::optional<long> a_p;
    ScanVerdict verdict;
    // The Galois-surjectivity condition is never checked, only assumed.
    static constexpr const char* kAssumption =
        "surjectivity of the p-adic Galois representation: ASSUMED, not computed";
};

std::string verdict_name(ScanVerdict v);

// Labels every prime in [p_min, p_max]; deterministic order by prime.
std::vector<ScanResult> supersingular_scan(const WeierstrassCurve& E, std::uint64_t p_min,
                                           std::uint64_t p_max, const ScanCriteria& crit,
                                           unsigned workers = 0);

// Dense polynomial in x with rational coefficients, low degree first.
using QPoly = std::vector<BigRational>;

long qpoly_degree(const QPoly& f);
BigRational qpoly_eval(const QPoly& f, const BigRational& x);

struct DivisionPolynomials {
    long m = 0;
    QPoly phi;            // degree m^2
    QPoly psi;            // degree (m^2-1)/2 for odd m
    QPoly omega_over_y;   // omega_m / y
};

// Odd m <= 31 (desk bound); short-form curve required.
DivisionPolynomials division_polynomials(const WeierstrassCurve& E, long m);

}  // namespace heightgap
