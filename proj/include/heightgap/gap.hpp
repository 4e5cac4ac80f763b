#pragma once

// The explicit gap constants of the two main theorems, the Q(n) function,
// Frey's archimedean bound, the tower predictions with ramification breaks
// and Hasse-Herbrand functions.  Every numeric output carries a derivation
// chain of (name, formula, value) entries; values are produced by the same
// tiny evaluator that re-checks them, so reports are self-describing.

#include <string>
#include <vector>

#include "heightgap/exact.hpp"

namespace heightgap {

struct GapParams {
    long d = 1;  // [K:Q]
    long f = 1;  // local degree at the chosen place
    long p = 5;

    long q() const { return p * p; }
    // w = p^{2f}
    BigInt w() const { return pow_int(BigInt(p), static_cast<unsigned long>(2 * f)); }
    bool meets_prime_floor() const {
        return BigInt(p) >= pow_int(BigInt(2), static_cast<unsigned long>(d + 2));
    }
    void validate() const;
};

struct DerivationEntry {
    std::string name;
    std::string formula;  // refers to earlier names
    double value = 0;
};

// Minimal expression evaluator: numbers, identifiers, + - * / ^, log(),
// min(...), parentheses.  Used both to build and to re-check derivations.
double eval_formula(const std::string& expr, const std::vector<DerivationEntry>& env);

struct GapReport {
    GapParams params;
    double universal_c = 0;  // caller-supplied input, recorded, never derived
    double unramified_gap = 0;
    double c2 = 0;
    double C1 = 0;
    double C2 = 0;
    double final_C = 0;
    std::vector<DerivationEntry> derivation;
    std::vector<std::string> warnings;
};

// Lemma on the unramified level: log(p^f / 2^d) / (d (w + 1)).
// Rejected when p^f <= 2^d (vacuous bound).
double unramified_gap(const GapParams& params);

// Q(1) = (q-1)q, Q(n >= 2) = q.
long Q_of_n(long n, long q);

GapReport thm01_constants(const GapParams& params, double universal_c);

// (4 / delta^4) h^(1/2 - delta), 0 < delta < 1/2.
double frey_rhs(double h, double delta);

struct EllipticGapReport {
    GapParams params;
    long d_frak_p = 1;
    BigInt amplification;   // 40 p^4 (w+1) (q-1)^2, exact integer
    double local_gap = 0;   // log p / (2 p^6)
    double global_gap = 0;  // d_p log p / (2 [K:Q] p^6)
    double epsilon = 0;     // global_gap / amplification
    std::vector<DerivationEntry> derivation;
};

EllipticGapReport thm02_constants(const GapParams& params, long d_frak_p);

// p^{-4} with the |H| <= p^4 justification recorded.
struct GaloisOrbitFloor {
    BigRational factor;
    std::string justification;
};
GaloisOrbitFloor galois_orbit_floor(long p);

// Piecewise-linear Hasse-Herbrand data: phi(0) = 0, segments of given
// slopes between consecutive breakpoints, the last slope extending to
// infinity.
struct HasseHerbrand {
    std::vector<BigRational> breaks_u;      // increasing u-breakpoints
    std::vector<BigRational> slopes;        // size breaks_u.size() + 1
    BigRational phi(const BigRational& u) const;
    BigRational psi(const BigRational& v) const;  // inverse of phi
};

struct RamificationBreak {
    long interval_lo = 0;  // q^{k-1}
    long interval_hi = 0;  // q^k - 1
    long level = 0;        // fixed-field level k
};

struct TowerPrediction {
    long n = 0;
    long p = 0;
    BigInt degree;             // q^{n-1}(q-1)
    std::string group_shape;   // Z/(q-1) x (Z/p^{n-1})^2
    std::vector<RamificationBreak> breaks;
    HasseHerbrand herbrand;
};

TowerPrediction tower_prediction(long n, long p);

// Herbrand data of one relative level K(pi^{k+1})/K(pi^k): the full group
// up to u = q^k - 1, then trivial; phi(u) = u on that range.
HasseHerbrand herbrand_relative_level(long k, long q);

}  // namespace heightgap
