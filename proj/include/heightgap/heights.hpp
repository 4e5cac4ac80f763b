#pragma once

// Logarithmic Weil heights of algebraic numbers, computed from the roots
// of the (certified irreducible) integer minimal polynomial:
//   h = (log|lc| + sum log^+ |root_i|) / deg,
// the Mahler-measure form of the places definition; the equivalence is
// classical (product formula plus the factorization of |.|_p over the
// conjugates), see Bombieri-Gubler ch. 1.

#include <complex>
#include <string>
#include <vector>

#include "heightgap/exact.hpp"
#include "heightgap/poly_factor.hpp"

namespace heightgap {

inline constexpr long kDeskDegreeBound = 24;

struct HeightValue {
    double value = 0;
    double error_bound = 0;
};

class AlgebraicNumber {
  public:
    // minpoly: integer coefficients, constant term first.  Certified
    // primitive and irreducible at construction (degree <= 24).
    explicit AlgebraicNumber(IntPoly minpoly, std::string label = {});

    const IntPoly& minpoly() const { return poly_; }
    long degree() const { return ipoly_degree(poly_); }
    const std::string& label() const { return label_; }

    // Distinguished numeric representative among the conjugates: the root
    // of largest modulus (ties by argument).  Heights are conjugate
    // invariant, so any choice works; a fixed one keeps compositions
    // deterministic.
    std::complex<double> numeric_value() const;

  private:
    IntPoly poly_;
    std::string label_;
};

struct RootBox {
    std::complex<double> center;
    double radius;  // certified inclusion radius
};

// All complex roots with a-posteriori inclusion radii (Aberth iteration).
std::vector<RootBox> complex_roots(const IntPoly& f);

HeightValue weil_height(const AlgebraicNumber& alpha);

// Exact height of a rational number: log max(|num|, den).
double weil_height_rational(const BigRational& x);

// Kronecker: h = 0 iff root of unity; decided exactly by divisibility of
// T^L - 1 for the finitely many L with phi(L) = deg.
bool is_root_of_unity(const AlgebraicNumber& alpha);

// Minimal polynomial compositions (resultant based, desk degree bound on
// the output).  Each returns the irreducible factor vanishing at the
// composed numeric representative.
AlgebraicNumber power_of(const AlgebraicNumber& a, long k);
AlgebraicNumber product_of(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber sum_of(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber scale_by(const AlgebraicNumber& a, const BigRational& c);

struct HeightLawCheck {
    std::string name;
    double lhs = 0, rhs = 0;
    bool holds = false;
};

// Prop-style law checks over a sample corpus: product subadditivity, the
// sum bound with log(n) slack, the power identity, root-of-unity
// invariance.  Samples whose compositions exceed the desk degree are
// skipped and recorded.
struct HeightLawReport {
    std::vector<HeightLawCheck> checks;
    std::vector<std::string> skipped;
    bool all_hold() const;
};
HeightLawReport height_law_suite(const std::vector<AlgebraicNumber>& samples);

}  // namespace heightgap
