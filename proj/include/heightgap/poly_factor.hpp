#pragma once

// Exact univariate integer polynomial arithmetic and factorization over Z
// (Berlekamp mod p + Hensel lifting + subset recombination), sized for the
// desk degree bound of the height module.

#include <vector>

#include "heightgap/exact.hpp"

namespace heightgap {

using IntPoly = std::vector<BigInt>;  // dense, low degree first

long ipoly_degree(const IntPoly& f);
void ipoly_trim(IntPoly& f);
IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_add(IntPoly a, const IntPoly& b);
IntPoly ipoly_sub(IntPoly a, const IntPoly& b);
BigInt ipoly_content(const IntPoly& f);
IntPoly ipoly_primitive(IntPoly f);             // content removed, leading coeff > 0
BigInt ipoly_eval(const IntPoly& f, const BigInt& x);
BigRational ipoly_eval_q(const IntPoly& f, const BigRational& x);
IntPoly ipoly_derivative(const IntPoly& f);
// Exact division; throws if the remainder is nonzero.
IntPoly ipoly_divexact(const IntPoly& a, const IntPoly& b);
// True iff b divides a over Q (and then over Z for primitive b).
bool ipoly_divides(const IntPoly& b, const IntPoly& a);
// Primitive gcd via interpolationless subresultant remainders.
IntPoly ipoly_gcd(IntPoly a, IntPoly b);

// Resultant of two integer polynomials (Sylvester matrix, fraction-free
// Bareiss elimination).
BigInt ipoly_resultant(const IntPoly& f, const IntPoly& g);

// Irreducible factors over Z with multiplicities (primitive, positive
// leading coefficients); the content is dropped.
std::vector<std::pair<IntPoly, int>> ipoly_factor(const IntPoly& f);

bool ipoly_is_irreducible(const IntPoly& f);

// Cyclotomic polynomial Phi_n.
IntPoly cyclotomic(unsigned n);
unsigned long euler_phi(unsigned long n);

}  // namespace heightgap
