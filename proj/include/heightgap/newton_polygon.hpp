#pragma once

// Newton polygons of polynomials with p-adic coefficients: lower convex
// hull of (degree, valuation).  Segments are reported as root valuations
// with multiplicities (a hull segment of geometric slope s and horizontal
// length l certifies l roots of valuation -s).  Roots at zero (trailing
// zero coefficients) are split out before hull computation.

#include <optional>
#include <vector>

#include "heightgap/exact.hpp"

namespace heightgap {

struct PolygonSegment {
    BigRational root_valuation;  // -geometric slope
    long length = 0;             // number of roots with this valuation
};

struct NewtonPolygon {
    long zero_root_count = 0;                          // multiplicity of the root 0
    std::vector<std::pair<long, BigRational>> vertices;  // hull, left to right
    std::vector<PolygonSegment> segments;              // hull order (root valuations decreasing)

    long total_roots() const {
        long n = zero_root_count;
        for (const auto& s : segments) n += s.length;
        return n;
    }
};

// coeff_valuations: (degree, v(c_degree)) for the finite-valuation
// coefficients; degrees with v = infinity are simply omitted.  At least
// two finite entries after stripping the zero roots are not required --
// a monomial yields an empty segment list.
NewtonPolygon newton_polygon(std::vector<std::pair<long, BigRational>> coeff_valuations);

}  // namespace heightgap
