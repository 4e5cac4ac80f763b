#include "heightgap/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace heightgap {

WeierstrassCurve::WeierstrassCurve(BigRational a1, BigRational a2, BigRational a3, BigRational a4,
                                   BigRational a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {
    b2_ = a1_ * a1_ + 4 * a2_;
    b4_ = 2 * a4_ + a1_ * a3_;
    b6_ = a3_ * a3_ + 4 * a6_;
    b8_ = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) throw bad_input("WeierstrassCurve: singular curve (discriminant 0)");
    j_ = c4_ * c4_ * c4_ / disc_;
}

WeierstrassCurve WeierstrassCurve::short_form(const BigRational& A, const BigRational& B) {
    return WeierstrassCurve(0, 0, 0, A, B);
}

bool WeierstrassCurve::has_integral_coefficients() const {
    for (const BigRational* a : {&a1_, &a2_, &a3_, &a4_, &a6_})
        if (a->get_den() != 1) return false;
    return true;
}

std::string WeierstrassCurve::str() const {
    std::ostringstream os;
    os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
    return os.str();
}

bool on_curve(const WeierstrassCurve& E, const CurvePoint& P) {
    if (P.is_infinity()) return true;
    const BigRational &x = P.x(), &y = P.y();
    return y * y + E.a1() * x * y + E.a3() * y ==
           x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

CurvePoint point_neg(const WeierstrassCurve& E, const CurvePoint& P) {
    if (P.is_infinity()) return P;
    return CurvePoint::affine(P.x(), -P.y() - E.a1() * P.x() - E.a3());
}

CurvePoint point_add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const BigRational &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
    if (x1 == x2 && y2 == -y1 - E.a1() * x1 - E.a3()) return CurvePoint::infinity();
    BigRational lam;
    if (x1 == x2 && y1 == y2)
        lam = (3 * x1 * x1 + 2 * E.a2() * x1 + E.a4() - E.a1() * y1) /
              (2 * y1 + E.a1() * x1 + E.a3());
    else
        lam = (y2 - y1) / (x2 - x1);
    BigRational nu = y1 - lam * x1;
    BigRational x3 = lam * lam + E.a1() * lam - E.a2() - x1 - x2;
    BigRational y3 = -(lam + E.a1()) * x3 - nu - E.a3();
    return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint point_mul(const WeierstrassCurve& E, const CurvePoint& P, long m) {
    if (m < 0) return point_neg(E, point_mul(E, P, -m));
    CurvePoint R = CurvePoint::infinity();
    CurvePoint Q = P;
    while (m) {
        if (m & 1) R = point_add(E, R, Q);
        Q = point_add(E, Q, Q);
        m >>= 1;
    }
    return R;
}

namespace {

std::uint64_t mod_reduce(const BigRational& a, std::uint64_t p) {
    BigInt den = a.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw bad_input("reduction: coefficient not p-integral");
    BigInt n = a.get_num() % BigInt(static_cast<unsigned long>(p));
    if (n < 0) n += static_cast<unsigned long>(p);
    BigInt d = den % BigInt(static_cast<unsigned long>(p));
    std::uint64_t nn = n.get_ui(), dd = d.get_ui();
    // dd^-1 mod p
    std::uint64_t inv = 1, base = dd % p, e = p - 2;
    while (e) {
        if (e & 1) inv = static_cast<unsigned __int128>(inv) * base % p;
        base = static_cast<unsigned __int128>(base) * base % p;
        e >>= 1;
    }
    return static_cast<unsigned __int128>(nn) * inv % p;
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = static_cast<unsigned __int128>(r) * b % p;
        b = static_cast<unsigned __int128>(b) * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

ReducedCurve reduce_curve(const WeierstrassCurve& E, std::uint64_t p, unsigned f) {
    ReducedCurve R;
    R.p = p;
    R.f = f;
    auto field = FqField::make(p, f);
    for (const BigRational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        std::uint64_t r = mod_reduce(*a, p);
        R.a_invariants.push_back(FqElement::from_int(field, BigInt(static_cast<unsigned long>(r))));
    }
    if (mod_reduce(E.discriminant(), p) == 0)
        throw bad_input("reduce_curve: bad reduction (discriminant vanishes mod p)");
    return R;
}

ReducedCurve count_points(const WeierstrassCurve& E, std::uint64_t p, unsigned f) {
    if (p < 5) throw bad_input("count_points: p >= 5 required");
    double q = 1;
    for (unsigned i = 0; i < f; ++i) q *= static_cast<double>(p);
    if (q > static_cast<double>(kDeskBoundQ)) throw bad_input("count_points: p^f beyond desk bound");
    ReducedCurve R = reduce_curve(E, p, f);
    std::uint64_t qq = 1;
    for (unsigned i = 0; i < f; ++i) qq *= p;
    std::uint64_t count = 1;  // O
    if (f == 1) {
        // (2y+a1x+a3)^2 = 4x^3 + b2 x^2 + 2b4 x + b6
        std::uint64_t b2 = mod_reduce(E.b2(), p), b4 = mod_reduce(E.b4(), p),
                      b6 = mod_reduce(E.b6(), p);
        for (std::uint64_t x = 0; x < p; ++x) {
            unsigned __int128 rhs = static_cast<unsigned __int128>(4) * x % p * x % p * x % p;
            rhs = (rhs + static_cast<unsigned __int128>(b2) * x % p * x % p) % p;
            rhs = (rhs + static_cast<unsigned __int128>(2) * b4 % p * x % p) % p;
            rhs = (rhs + b6) % p;
            std::uint64_t r = static_cast<std::uint64_t>(rhs);
            if (r == 0)
                count += 1;
            else if (powmod_u64(r, (p - 1) / 2, p) == 1)
                count += 2;
        }
    } else {
        auto field = FqField::make(p, f);
        FqElement b2 = FqElement::from_int(field, E.b2().get_num()) *
                       FqElement::from_int(field, E.b2().get_den()).inverse();
        FqElement b4 = FqElement::from_int(field, E.b4().get_num()) *
                       FqElement::from_int(field, E.b4().get_den()).inverse();
        FqElement b6 = FqElement::from_int(field, E.b6().get_num()) *
                       FqElement::from_int(field, E.b6().get_den()).inverse();
        FqElement four = FqElement::from_int(field, 4);
        FqElement two = FqElement::from_int(field, 2);
        BigInt half_exp((qq - 1) / 2);
        for (std::uint64_t idx = 0; idx < qq; ++idx) {
            FqElement x = fq_from_index(field, idx);
            FqElement rhs = ((four * x + b2) * x + two * b4) * x + b6;
            if (rhs.is_zero())
                count += 1;
            else if (rhs.pow(half_exp) == FqElement::from_int(field, 1))
                count += 2;
        }
    }
    R.point_count = count;
    R.a_q = static_cast<long>(count) - static_cast<long>(qq) - 1;
    // Hasse window sanity: a counting bug, not an input error, if violated
    double bound = 2 * std::sqrt(static_cast<double>(qq));
    if (std::abs(static_cast<double>(*R.a_q)) > bound + 1e-9)
        throw computation_error("count_points: Hasse bound violated");
    return R;
}

bool is_supersingular(const WeierstrassCurve& E, std::uint64_t p, unsigned f) {
    ReducedCurve R = count_points(E, p, f);
    long aq = *R.a_q;
    return aq % static_cast<long>(p) == 0;
}

std::uint64_t reduced_j(const WeierstrassCurve& E, std::uint64_t p) {
    std::uint64_t c4 = mod_reduce(E.c4(), p);
    std::uint64_t disc = mod_reduce(E.discriminant(), p);
    if (disc == 0) throw bad_input("reduced_j: bad reduction");
    std::uint64_t c43 = static_cast<unsigned __int128>(c4) * c4 % p * c4 % p;
    return static_cast<unsigned __int128>(c43) * powmod_u64(disc, p - 2, p) % p;
}

std::string verdict_name(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::kAccepted: return "accepted";
        case ScanVerdict::kBadReduction: return "rejected(bad reduction)";
        case ScanVerdict::kOrdinary: return "rejected(ordinary)";
        case ScanVerdict::kJInvariantExceptional: return "rejected(j in {0,1728})";
        case ScanVerdict::kBelowFloor: return "rejected(below floor)";
    }
    return "?";
}

std::vector<ScanResult> supersingular_scan(const WeierstrassCurve& E, std::uint64_t p_min,
                                           std::uint64_t p_max, const ScanCriteria& crit,
                                           unsigned workers) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = std::max<std::uint64_t>(p_min, 2); p <= p_max; ++p)
        if (is_prime(BigInt(static_cast<unsigned long>(p)))) primes.push_back(p);

    std::vector<ScanResult> out(primes.size());
    auto classify = [&](size_t i) {
        std::uint64_t p = primes[i];
        ScanResult r;
        r.p = p;
        try {
            if (p < 5) {
                r.verdict = p < crit.prime_floor() ? ScanVerdict::kBelowFloor
                                                   : ScanVerdict::kBadReduction;
                out[i] = r;
                return;
            }
            ReducedCurve R = count_points(E, p, crit.local_f);
            r.a_p = R.a_q;
            if (*r.a_p % static_cast<long>(p) != 0) {
                r.verdict = ScanVerdict::kOrdinary;
            } else if (p < crit.prime_floor()) {
                r.verdict = ScanVerdict::kBelowFloor;
            } else {
                std::uint64_t j = reduced_j(E, p);
                if (j == 0 || j == 1728 % p)
                    r.verdict = ScanVerdict::kJInvariantExceptional;
                else
                    r.verdict = ScanVerdict::kAccepted;
            }
        } catch (const bad_input&) {
            r.verdict = ScanVerdict::kBadReduction;
        }
        out[i] = r;
    };

    unsigned n_workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, 8);
    if (n_workers <= 1 || primes.size() < 4) {
        for (size_t i = 0; i < primes.size(); ++i) classify(i);
    } else {
        std::vector<std::future<void>> fut;
        std::atomic<size_t> next{0};
        for (unsigned w = 0; w < n_workers; ++w)
            fut.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next++; i < primes.size(); i = next++) classify(i);
            }));
        for (auto& f : fut) f.get();
    }
    return out;
}

long qpoly_degree(const QPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<long>(i);
    return -1;
}

BigRational qpoly_eval(const QPoly& f, const BigRational& x) {
    BigRational r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

namespace {

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, BigRational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

QPoly qp_sub(QPoly a, const QPoly& b) {
    a.resize(std::max(a.size(), b.size()), BigRational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

QPoly qp_scale(QPoly a, const BigRational& k) {
    for (auto& c : a) c *= k;
    return a;
}

}  // namespace

DivisionPolynomials division_polynomials(const WeierstrassCurve& E, long m) {
    if (m % 2 == 0) throw bad_input("division_polynomials: m must be odd");
    if (m < 1 || m > 31) throw bad_input("division_polynomials: odd m <= 31 (desk bound)");
    if (!E.is_short_form())
        throw bad_input("division_polynomials: short Weierstrass form required");
    const BigRational A = E.a4(), B = E.a6();
    QPoly fx = {B, A, 0, 1};  // x^3 + A x + B

    // g[j] with psi_j = g_j * (y if j even)
    long top = m + 2;
    std::vector<QPoly> g(top + 3);
    g[0] = {};           // psi_0 = 0
    g[1] = {1};
    g[2] = {2};          // psi_2 = 2y
    g[3] = {-A * A, 12 * B, 6 * A, 0, 3};
    g[4] = qp_scale(QPoly{-8 * B * B - A * A * A, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1}, 4);
    for (long j = 5; j <= top; ++j) {
        long k = j / 2;
        if (j % 2 == 1) {
            // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
            QPoly t1 = qp_mul(g[k + 2], qp_mul(g[k], qp_mul(g[k], g[k])));
            QPoly t2 = qp_mul(g[k - 1], qp_mul(g[k + 1], qp_mul(g[k + 1], g[k + 1])));
            // the even-index pair contributes y^4 = fx^2
            if (k % 2 == 0)
                t1 = qp_mul(t1, qp_mul(fx, fx));
            else
                t2 = qp_mul(t2, qp_mul(fx, fx));
            g[j] = qp_sub(t1, t2);
        } else {
            // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y);
            // tracking y-weights, both parities collapse to the same g-identity
            QPoly t1 = qp_mul(g[k + 2], qp_mul(g[k - 1], g[k - 1]));
            QPoly t2 = qp_mul(g[k - 2], qp_mul(g[k + 1], g[k + 1]));
            g[j] = qp_scale(qp_mul(g[k], qp_sub(t1, t2)), BigRational(1, 2));
        }
    }

    DivisionPolynomials D;
    D.m = m;
    D.psi = g[m];
    // phi_m = x psi_m^2 - psi_{m+1} psi_{m-1}; m odd so the last product has y^2 = fx
    QPoly xpoly = {0, 1};
    D.phi = qp_sub(qp_mul(xpoly, qp_mul(g[m], g[m])), qp_mul(fx, qp_mul(g[m + 1], g[m - 1])));
    // omega_m = (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / (4y); m odd:
    // the even squares give fx, so omega = y * h / 4 with h below
    QPoly h = qp_sub(qp_mul(g[m + 2], qp_mul(g[m - 1], g[m - 1])),
                     qp_mul(g[m - 2], qp_mul(g[m + 1], g[m + 1])));
    D.omega_over_y = qp_scale(h, BigRational(1, 4));

    if (qpoly_degree(D.phi) != m * m)
        throw computation_error("division_polynomials: deg phi != m^2");
    if (qpoly_degree(D.psi) != (m * m - 1) / 2)
        throw computation_error("division_polynomials: deg psi != (m^2-1)/2");
    return D;
}

}  // namespace heightgap
