#pragma once

// Neron-Tate heights on elliptic curves over Q: the doubling limit, local
// heights (archimedean q-series, good-reduction formula, multiplicative
// formula evaluator), the global decomposition, and the Haar-integral
// check for the archimedean local height.
//
// Normalization note: h(P) = h(x(P))/2, so canonical heights here are half
// of the x-based convention some tables use; both internal routes follow
// the same convention and are cross-checked against each other.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "heightgap/curve.hpp"

namespace heightgap {

struct NaiveHeight {
    double value = 0;
};

NaiveHeight naive_height(const CurvePoint& P);

struct CanonicalHeightEstimate {
    double value = 0;
    int iterations = 0;
    double tail_bound = 0;
    bool truncated_by_budget = false;  // coordinate growth stopped the iteration early
};

// hhat(P) = lim h([2^n]P)/4^n with exact rational doubling; iterates until
// the increment drops below tol/4 or n_iters is reached.
CanonicalHeightEstimate canonical_height_doubling(const WeierstrassCurve& E, const CurvePoint& P,
                                                  int n_iters = 8, double tol = 1e-9);

enum class LocalMethod { kGoodReduction, kArchSeries, kMultFormula };

struct LocalHeightValue {
    std::optional<std::uint64_t> prime;  // empty = archimedean
    double value = 0;
    LocalMethod method = LocalMethod::kGoodReduction;
};

// lambda_p(P) = (1/2) max{-v_p(x(P)), 0} log p; requires good reduction.
LocalHeightValue local_height_good_reduction(const WeierstrassCurve& E, const CurvePoint& P,
                                             std::uint64_t p);

struct Uniformization {
    std::complex<double> omega1, omega2;  // reduced lattice basis, Im(omega2/omega1) > 0
    std::complex<double> tau;             // omega2/omega1
    std::complex<double> q;               // e^{2 pi i tau}, |q| < 1
    double e1 = 0;                        // largest real root of the shifted cubic
    std::string provenance;               // how the basis was obtained
};

// Periods via AGM on the real model; j(tau) is cross-checked against the
// curve's j-invariant to 1e-8 through the q-expansion.
Uniformization uniformize(const WeierstrassCurve& E);

// j from the q-expansion E4(q)^3 / Delta(q).
std::complex<double> j_from_q(std::complex<double> q);

// Elliptic logarithm: z with wp-image x(P), in the lattice of `unif`.
std::complex<double> elliptic_log(const WeierstrassCurve& E, const Uniformization& unif,
                                  const CurvePoint& P);

// Weierstrass p-function for the unif lattice, in shifted X coordinates.
std::complex<double> wp_value(const Uniformization& unif, std::complex<double> z);

// The archimedean local height (series of Eq (4.4.2)); z in absolute
// lattice coordinates.  z must not be a lattice point.
LocalHeightValue local_height_arch(const Uniformization& unif, std::complex<double> z);

// lambda as a function of the normalized coordinate z = x + y*tau.
double lambda_arch_normalized(std::complex<double> tau, std::complex<double> z_norm);

// Formula evaluator for the multiplicative-reduction local height,
// Eq (4.4.3), on abstract valuation data: ratio = v(q0)/v(q_v) in (0,1].
// Returns lambda / log p together with the (4.4.4) lower bound.
struct MultFormulaValue {
    BigRational lambda_over_logp;
    BigRational lower_bound_over_logp;  // the b2 term alone
    double value_at(double logp) const { return to_double(lambda_over_logp) * logp; }
};
MultFormulaValue local_height_mult_formula(const BigRational& v_q0, const BigRational& v_qv,
                                           const BigRational& v_one_minus_q0);

// b2(X) = X^2 - X + 1/6 evaluated exactly.
BigRational b2_polynomial(const BigRational& x);
// Integral over [0,1] of b2 -- exactly zero; computed symbolically.
BigRational b2_inner_integral_exact();

// hhat(P) as lambda_arch + finite local parts.  All finite places must
// have nonsingular reduction of P on the (p-minimal, integral) model; a
// support prime with singular reduction is rejected.
struct LocalSumResult {
    double value = 0;
    std::vector<LocalHeightValue> parts;
};
LocalSumResult canonical_height_local_sum(const WeierstrassCurve& E, const CurvePoint& P);

// Numeric check of  int lambda d(mu_Haar) = 0  over the fundamental
// parallelogram, epsilon-disk at the lattice point handled analytically.
struct HaarCheckResult {
    double total = 0;
    double b2_term = 0;                // exactly 0 by the inner integral
    std::vector<double> jensen_terms;  // per-term integrals, n = 1..count
};
HaarCheckResult haar_integral_check(const Uniformization& unif, int grid_n, double eps = 1e-3,
                                    int jensen_count = 2);

}  // namespace heightgap
