#include "heightgap/fq.hpp"

#include <algorithm>

namespace heightgap {

namespace {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // dense, low degree first

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, u64 p) {
    unsigned f = static_cast<unsigned>(mod.size()) - 1;
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (size_t i = prod.size(); i-- > f;) {
        u64 c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < f; ++j)
            prod[i - f + j] = (prod[i - f + j] + c * (p - mod[j] % p)) % p;
    }
    prod.resize(f);
    return prod;
}

Poly poly_powmod_xq(unsigned e_log_p, u64 p, const Poly& mod) {
    // x^(p^e_log_p) mod 'mod' by repeated p-th powering
    unsigned f = static_cast<unsigned>(mod.size()) - 1;
    Poly x(f, 0);
    if (f == 1) {
        // x reduces to -mod[0]
        x[0] = (p - mod[0] % p) % p;
    } else {
        x[1] = 1;
    }
    Poly r = x;
    for (unsigned it = 0; it < e_log_p; ++it) {
        // r <- r^p by square-and-multiply on exponent p
        Poly acc(f, 0);
        acc[0] = 1;
        Poly base = r;
        u64 e = p;
        while (e) {
            if (e & 1) acc = poly_mulmod(acc, base, mod, p);
            base = poly_mulmod(base, base, mod, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

bool poly_is_x(const Poly& r, const Poly& mod, u64 p) {
    unsigned f = static_cast<unsigned>(mod.size()) - 1;
    Poly x(f, 0);
    if (f == 1)
        x[0] = (p - mod[0] % p) % p;
    else
        x[1] = 1;
    return r == x;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    auto deg = [](const Poly& v) {
        for (size_t i = v.size(); i-- > 0;)
            if (v[i]) return static_cast<long>(i);
        return -1L;
    };
    auto inv = [p](u64 x) {
        // p prime
        long long t = 0, nt = 1;
        long long r = static_cast<long long>(p), nr = static_cast<long long>(x % p);
        while (nr) {
            long long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return static_cast<u64>((t % static_cast<long long>(p) + p) % p);
    };
    while (deg(b) >= 0) {
        long da = deg(a), db = deg(b);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        u64 scale = a[da] * inv(b[db]) % p;
        for (long i = 0; i <= db; ++i)
            a[da - db + i] = (a[da - db + i] + (p - scale * b[i] % p)) % p;
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (deg(a) < deg(b)) std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& mod, u64 p) {
    unsigned f = static_cast<unsigned>(mod.size()) - 1;
    // x^(p^f) == x mod (mod) and gcd(x^(p^(f/l)) - x, mod) = 1 for primes l | f
    Poly r = poly_powmod_xq(f, p, mod);
    if (!poly_is_x(r, mod, p)) return false;
    for (unsigned l = 2; l <= f; ++l) {
        if (f % l) continue;
        bool lp = true;
        for (unsigned d = 2; d * d <= l; ++d)
            if (l % d == 0) lp = false;
        if (!lp) continue;
        Poly s = poly_powmod_xq(f / l, p, mod);
        // s - x
        Poly d = s;
        if (f == 1) {
            d[0] = (d[0] + mod[0]) % p;
        } else {
            d.resize(std::max<size_t>(d.size(), 2), 0);
            d[1] = (d[1] + p - 1) % p;
        }
        while (!d.empty() && d.back() == 0) d.pop_back();
        Poly g = poly_gcd(Poly(mod), d, p);
        long dg = -1;
        for (size_t i = g.size(); i-- > 0;)
            if (g[i]) {
                dg = static_cast<long>(i);
                break;
            }
        if (dg != 0) return false;
    }
    return true;
}

}  // namespace

std::shared_ptr<const FqField> FqField::make(std::uint64_t p, unsigned f) {
    if (!is_prime(BigInt(static_cast<unsigned long>(p)))) throw bad_input("FqField: p must be prime");
    if (f < 1) throw bad_input("FqField: f >= 1 required");
    double qd = 1;
    for (unsigned i = 0; i < f; ++i) qd *= static_cast<double>(p);
    if (qd > static_cast<double>(kDeskBoundQ))
        throw bad_input("FqField: p^f beyond desk bound 10^6");
    u64 q = 1;
    for (unsigned i = 0; i < f; ++i) q *= p;

    // lexicographically smallest monic irreducible of degree f:
    // order by (c_{f-1}, ..., c_1, c_0) ascending.
    std::vector<u64> mod(f + 1, 0);
    mod[f] = 1;
    if (f == 1) {
        // x is irreducible already (c0 = 0)
        return std::shared_ptr<const FqField>(new FqField(p, f, q, mod));
    }
    std::vector<u64> digits(f, 0);
    while (true) {
        for (unsigned i = 0; i < f; ++i) mod[i] = digits[f - 1 - i];
        if (mod[0] != 0 && is_irreducible(mod, p)) break;
        // increment digit vector (digits[0] most significant = c_{f-1})
        int i = static_cast<int>(f) - 1;
        while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
        if (i < 0) throw computation_error("FqField: no irreducible found");
    }
    return std::shared_ptr<const FqField>(new FqField(p, f, q, mod));
}

FqElement::FqElement(std::shared_ptr<const FqField> field, std::vector<std::uint64_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    if (!field_) throw bad_input("FqElement: null field");
    c_.resize(field_->f(), 0);
    for (auto& x : c_) x %= field_->p();
}

FqElement FqElement::from_int(std::shared_ptr<const FqField> field, const BigInt& n) {
    BigInt r = n % BigInt(static_cast<unsigned long>(field->p()));
    if (r < 0) r += static_cast<unsigned long>(field->p());
    std::vector<std::uint64_t> c(field->f(), 0);
    c[0] = r.get_ui();
    return FqElement(std::move(field), std::move(c));
}

bool FqElement::is_zero() const {
    if (!field_) return true;
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

void FqElement::check_same_field(const FqElement& o) const {
    if (!field_ || !o.field_ || !(*field_ == *o.field_))
        throw bad_input("FqElement: operands from different fields");
}

FqElement FqElement::operator+(const FqElement& o) const {
    check_same_field(o);
    auto c = c_;
    for (unsigned i = 0; i < field_->f(); ++i) c[i] = (c[i] + o.c_[i]) % field_->p();
    return FqElement(field_, std::move(c));
}

FqElement FqElement::operator-(const FqElement& o) const { return *this + (-o); }

FqElement FqElement::operator-() const {
    if (!field_) return *this;
    auto c = c_;
    for (auto& x : c) x = (field_->p() - x) % field_->p();
    return FqElement(field_, std::move(c));
}

FqElement FqElement::operator*(const FqElement& o) const {
    check_same_field(o);
    const auto p = field_->p();
    const auto& m = field_->modulus();
    unsigned f = field_->f();
    std::vector<std::uint64_t> prod(2 * f - 1, 0);
    for (unsigned i = 0; i < f; ++i) {
        if (!c_[i]) continue;
        for (unsigned j = 0; j < f; ++j)
            prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
    }
    for (size_t i = prod.size(); i-- > f;) {
        std::uint64_t cc = prod[i];
        if (!cc) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < f; ++j)
            prod[i - f + j] = (prod[i - f + j] + cc * ((p - m[j] % p) % p)) % p;
    }
    prod.resize(f);
    return FqElement(field_, std::move(prod));
}

FqElement FqElement::pow(BigInt e) const {
    if (!field_) throw bad_input("FqElement::pow on null element");
    BigInt qm1(static_cast<unsigned long>(field_->q() - 1));
    if (e < 0) return inverse().pow(-e);
    FqElement acc = from_int(field_, 1);
    FqElement base = *this;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FqElement FqElement::inverse() const {
    if (is_zero()) throw bad_input("FqElement: inverse of zero");
    // x^(q-2)
    return pow(BigInt(static_cast<unsigned long>(field_->q())) - 2);
}

bool operator==(const FqElement& a, const FqElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (!a.field_ || !b.field_) return false;
    return *a.field_ == *b.field_ && a.c_ == b.c_;
}

FqElement fq_from_index(std::shared_ptr<const FqField> field, std::uint64_t index) {
    std::vector<std::uint64_t> c(field->f(), 0);
    for (unsigned i = 0; i < field->f(); ++i) {
        c[i] = index % field->p();
        index /= field->p();
    }
    return FqElement(std::move(field), std::move(c));
}

}  // namespace heightgap
