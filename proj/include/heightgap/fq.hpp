#pragma once

// Finite fields F_{p^f} at desk scale (p^f <= 10^6).  Elements are vectors
// of coordinates with respect to a fixed monic irreducible modulus over
// F_p; the modulus is the lexicographically smallest one of degree f, so
// every run of the library agrees on the representation.

#include <cstdint>
#include <memory>
#include <vector>

#include "heightgap/exact.hpp"

namespace heightgap {

inline constexpr std::uint64_t kDeskBoundQ = 1000000;

class FqField {
  public:
    // Checks primality of p and builds (or verifies) the modulus.
    static std::shared_ptr<const FqField> make(std::uint64_t p, unsigned f);

    std::uint64_t p() const { return p_; }
    unsigned f() const { return f_; }
    std::uint64_t q() const { return q_; }
    // Monic modulus: coefficients of 1, x, ..., x^f (last entry 1).
    const std::vector<std::uint64_t>& modulus() const { return mod_; }

    friend bool operator==(const FqField& a, const FqField& b) {
        return a.p_ == b.p_ && a.f_ == b.f_;
    }

  private:
    FqField(std::uint64_t p, unsigned f, std::uint64_t q, std::vector<std::uint64_t> mod)
        : p_(p), f_(f), q_(q), mod_(std::move(mod)) {}
    std::uint64_t p_;
    unsigned f_;
    std::uint64_t q_;
    std::vector<std::uint64_t> mod_;
};

class FqElement {
  public:
    FqElement() = default;  // zero of an unspecified field; usable as identity
    FqElement(std::shared_ptr<const FqField> field, std::vector<std::uint64_t> coeffs);
    static FqElement from_int(std::shared_ptr<const FqField> field, const BigInt& n);

    bool is_zero() const;
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    const std::shared_ptr<const FqField>& field() const { return field_; }

    FqElement operator+(const FqElement& o) const;
    FqElement operator-(const FqElement& o) const;
    FqElement operator*(const FqElement& o) const;
    FqElement operator-() const;
    FqElement inverse() const;  // throws bad_input on zero
    FqElement pow(BigInt e) const;

    friend bool operator==(const FqElement& a, const FqElement& b);

  private:
    void check_same_field(const FqElement& o) const;
    std::shared_ptr<const FqField> field_;
    std::vector<std::uint64_t> c_;  // size f, entries in [0, p)
};

// Enumeration order: index -> element with base-p digits as coordinates.
FqElement fq_from_index(std::shared_ptr<const FqField> field, std::uint64_t index);

}  // namespace heightgap
