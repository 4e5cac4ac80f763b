#include "heightgap/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "heightgap/heights.hpp"

namespace heightgap {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1] (Newton on P_n), cached per n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            pp = n * (z * p0 - p1) / (z * z - 1);
            double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

const std::vector<double>& gl_nodes() {
    static std::vector<double> x, w;
    if (x.empty()) gauss_legendre(240, x, w);
    return x;
}
const std::vector<double>& gl_weights() {
    static std::vector<double> x, w;
    if (w.empty()) gauss_legendre(240, x, w);
    return w;
}

cd agm(cd a, cd b) {
    for (int i = 0; i < 300; ++i) {
        cd an = (a + b) / 2.0;
        cd bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
    }
    return (a + b) / 2.0;
}

// real roots of 4X^3 - g2 X - g3 (monic after /4), Newton + deflation
std::vector<cd> cubic_roots(double g2, double g3) {
    // solve x^3 + px + q with p = -g2/4, q = -g3/4
    double p = -g2 / 4, q = -g3 / 4;
    std::vector<cd> roots;
    double disc = -4 * p * p * p - 27 * q * q;
    if (disc >= 0) {
        // three real roots (trigonometric form)
        double m = 2 * std::sqrt(std::max(1e-300, -p / 3));
        double arg = std::clamp(3 * q / (p * m), -1.0, 1.0);
        double theta = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2 * kPi * k / 3));
    } else {
        // one real root (Cardano)
        double A = std::cbrt(-q / 2 + std::sqrt(q * q / 4 + p * p * p / 27));
        double B = (A == 0) ? 0 : -p / (3 * A);
        double r = A + B;
        roots.push_back(r);
        // remaining quadratic x^2 + r x + (r^2 + p)
        cd sq = std::sqrt(cd(-3 * r * r - 4 * p, 0));
        roots.push_back((-r + sq) / 2.0);
        roots.push_back((-r - sq) / 2.0);
    }
    // polish with Newton
    for (auto& z : roots)
        for (int it = 0; it < 60; ++it) {
            cd f = ((z * z * z) + p * z + q);
            cd fp = 3.0 * z * z + p;
            if (std::abs(fp) < 1e-300) break;
            cd step = f / fp;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
    return roots;
}

void lattice_reduce(cd& w1, cd& w2) {
    if ((w2 / w1).imag() < 0) w2 = -w2;
    for (int it = 0; it < 200; ++it) {
        cd tau = w2 / w1;
        double n = std::round(tau.real());
        if (n != 0) w2 -= n * w1;
        if (std::abs(w2) < std::abs(w1) * (1 - 1e-15)) {
            std::swap(w1, w2);
            if ((w2 / w1).imag() < 0) w2 = -w2;
        } else {
            break;
        }
    }
}

struct ShiftedModel {
    double g2, g3;
    // X = x + b2/12, Y = 2y + a1 x + a3; Y^2 = 4X^3 - g2 X - g3
};

ShiftedModel shifted(const WeierstrassCurve& E) {
    return {to_double(E.c4()) / 12.0, to_double(E.c6()) / 216.0};
}

}  // namespace

NaiveHeight naive_height(const CurvePoint& P) {
    NaiveHeight h;
    if (P.is_infinity()) return h;
    h.value = weil_height_rational(P.x()) / 2.0;
    return h;
}

CanonicalHeightEstimate canonical_height_doubling(const WeierstrassCurve& E, const CurvePoint& P,
                                                  int n_iters, double tol) {
    if (!on_curve(E, P)) throw bad_input("canonical_height_doubling: point not on curve");
    CanonicalHeightEstimate est;
    if (P.is_infinity()) return est;
    CurvePoint Q = P;
    double prev = naive_height(Q).value;
    double last_inc = 0;
    const size_t kBitBudget = 80u * 1000 * 1000;
    for (int k = 1; k <= n_iters; ++k) {
        Q = point_add(E, Q, Q);
        if (Q.is_infinity()) {  // torsion hit O: the limit is exactly 0
            est.value = 0;
            est.iterations = k;
            est.tail_bound = 0;
            return est;
        }
        if (mpz_sizeinbase(Q.x().get_num().get_mpz_t(), 2) > kBitBudget) {
            est.truncated_by_budget = true;
            break;
        }
        double cur = naive_height(Q).value / std::pow(4.0, k);
        last_inc = std::fabs(cur - prev);
        est.value = cur;
        est.iterations = k;
        prev = cur;
        if (last_inc < tol / 4 && k >= 4) break;
    }
    est.tail_bound = last_inc;  // geometric envelope: remaining tail ~ inc/3
    return est;
}

LocalHeightValue local_height_good_reduction(const WeierstrassCurve& E, const CurvePoint& P,
                                             std::uint64_t p) {
    if (P.is_infinity()) throw bad_input("local height at O is not defined");
    // good reduction check
    if (vp_rational(E.discriminant(), BigInt(static_cast<unsigned long>(p))).value() != 0)
        throw bad_input(
            "local_height_good_reduction: bad reduction; use the multiplicative-formula path");
    LocalHeightValue v;
    v.prime = p;
    v.method = LocalMethod::kGoodReduction;
    Valuation vx = vp_rational(P.x(), BigInt(static_cast<unsigned long>(p)));
    long e = vx.is_infinite() ? 0 : std::max(0L, -vx.value());
    v.value = 0.5 * static_cast<double>(e) * std::log(static_cast<double>(p));
    return v;
}

std::complex<double> j_from_q(cd q) {
    int N = 60;
    cd e4 = 1;
    for (int n = 1; n < N; ++n) {
        double s3 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s3 += static_cast<double>(d) * d * d;
        e4 += 240.0 * s3 * std::pow(q, n);
    }
    cd delta = q;
    for (int n = 1; n < N; ++n) delta *= std::pow(1.0 - std::pow(q, n), 24);
    return e4 * e4 * e4 / delta;
}

Uniformization uniformize(const WeierstrassCurve& E) {
    ShiftedModel sm = shifted(E);
    auto roots = cubic_roots(sm.g2, sm.g3);
    double jE = to_double(E.j_invariant());

    auto finish = [&](cd w1, cd w2, const std::string& prov) -> std::optional<Uniformization> {
        if (!std::isfinite(w1.real()) || !std::isfinite(w1.imag()) ||
            !std::isfinite(w2.real()) || !std::isfinite(w2.imag()))
            return std::nullopt;
        lattice_reduce(w1, w2);
        cd tau = w2 / w1;
        if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag())) return std::nullopt;
        if (tau.imag() <= 0) return std::nullopt;
        cd q = std::exp(cd(0, 2 * kPi) * tau);
        cd jq = j_from_q(q);
        double scale = std::max(1.0, std::fabs(jE));
        if (std::abs(jq - cd(jE, 0)) > 1e-8 * scale) return std::nullopt;
        Uniformization u;
        u.omega1 = w1;
        u.omega2 = w2;
        u.tau = tau;
        u.q = q;
        double e1 = roots[0].real();
        for (const auto& r : roots)
            if (std::fabs(r.imag()) < 1e-7 * std::max(1.0, std::abs(r)))
                e1 = std::max(e1, r.real());
        u.e1 = e1;
        u.provenance = prov;
        return u;
    };

    double disc = to_double(E.discriminant());
    std::vector<std::pair<cd, cd>> candidates;
    if (disc > 0) {
        std::vector<double> re;
        for (auto& r : roots) re.push_back(r.real());
        std::sort(re.rbegin(), re.rend());
        double e1 = re[0], e2 = re[1], e3 = re[2];
        cd M1 = agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
        cd M2 = agm(std::sqrt(cd(e1 - e3)), std::sqrt(cd(e2 - e3)));
        candidates.push_back({kPi / M1, cd(0, 1) * kPi / M2});
        candidates.push_back({kPi / M1, cd(0, -1) * kPi / M2});
    } else {
        double e1 = 0;
        cd ec;
        for (auto& r : roots) {
            if (std::fabs(r.imag()) < 1e-7 * std::max(1.0, std::abs(r)))
                e1 = r.real();
            else if (r.imag() > 0)
                ec = r;
        }
        cd a = std::sqrt(e1 - ec), b = std::sqrt(e1 - std::conj(ec));
        cd M1 = agm(a, b);
        cd M2 = agm(std::sqrt(e1 - ec), std::sqrt(std::conj(ec) - ec));
        candidates.push_back({kPi / M1, cd(0, 1) * kPi / M2});
        candidates.push_back({kPi / M1, cd(0, -1) * kPi / M2});
        candidates.push_back({kPi / M1, kPi / M2});
        candidates.push_back({kPi / M1, -kPi / M2});
    }
    for (auto& [w1, w2] : candidates) {
        auto u = finish(w1, w2, "agm on the real model, j(q) cross-checked");
        if (u) return *u;
    }
    throw computation_error("uniformize: period candidates failed the j cross-check");
}

std::complex<double> wp_value(const Uniformization& unif, cd z) {
    // reduce z into the fundamental cell of [omega1, omega2]
    cd w1 = unif.omega1, w2 = unif.omega2;
    // coordinates: z = a w1 + b w2
    double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    double a = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    double b = (z.imag() * w1.real() - z.real() * w1.imag()) / det;
    a -= std::floor(a);
    b -= std::floor(b);
    z = a * w1 + b * w2;
    cd q = unif.q;
    cd u = std::exp(cd(0, 2 * kPi) * (z / w1));
    cd s = cd(1.0 / 12.0, 0) + u / ((1.0 - u) * (1.0 - u));
    cd qn = q;
    for (int n = 1; n < 200; ++n) {
        cd t1 = qn * u / std::pow(1.0 - qn * u, 2);
        cd t2 = (qn / u) / std::pow(1.0 - qn / u, 2);
        cd t3 = 2.0 * qn / std::pow(1.0 - qn, 2);
        s += t1 + t2 - t3;
        qn *= q;
        if (std::abs(qn) < 1e-20) break;
    }
    cd factor = cd(0, 2 * kPi) / w1;
    return factor * factor * s;
}

std::complex<double> elliptic_log(const WeierstrassCurve& E, const Uniformization& unif,
                                  const CurvePoint& P) {
    if (P.is_infinity()) throw bad_input("elliptic_log: O has no finite logarithm");
    if (!on_curve(E, P)) throw bad_input("elliptic_log: point not on curve");
    ShiftedModel sm = shifted(E);
    double X0 = to_double(P.x() + E.b2() / 12);

    auto direct = [&](double X) -> double {
        // z = int_X^inf dX/sqrt(4X^3-g2X-g3), X > e1
        const auto& xs = gl_nodes();
        const auto& ws = gl_weights();
        double X1 = std::max({X, std::fabs(sm.g2) / 4 + std::fabs(sm.g3) / 4 + 4.0, 1.0}) + 1.0;
        double T = std::sqrt(X1 - X);
        double z = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            double t = 0.5 * T * (xs[i] + 1);
            double Xi = X + t * t;
            double val = 4 * Xi * Xi * Xi - sm.g2 * Xi - sm.g3;
            z += 0.5 * T * ws[i] * 2 * t / std::sqrt(std::max(val, 1e-300));
        }
        double up = 1 / std::sqrt(X1);
        for (size_t i = 0; i < xs.size(); ++i) {
            double s = 0.5 * up * (xs[i] + 1);
            double val = 4 - sm.g2 * s * s * s * s - sm.g3 * std::pow(s, 6);
            z += 0.5 * up * ws[i] * 2 / std::sqrt(std::max(val, 1e-300));
        }
        return z;
    };

    auto match = [&](const std::vector<cd>& cands, double X) -> cd {
        cd best = cands[0];
        double bd = 1e300;
        for (const auto& c : cands) {
            double d = std::abs(wp_value(unif, c) - cd(X, 0));
            if (d < bd) {
                bd = d;
                best = c;
            }
        }
        double scale = std::max(1.0, std::fabs(X));
        if (bd > 1e-5 * scale)
            throw computation_error("elliptic_log: no candidate matched wp(z) = X");
        return best;
    };

    if (X0 > unif.e1 + 1e-12) {
        // z vs omega1 - z differ by the sign of y; the local height is even,
        // so either representative serves
        return cd(direct(X0), 0);
    }
    CurvePoint P2 = point_add(E, P, P);
    if (P2.is_infinity()) {
        // 2-torsion
        std::vector<cd> cands = {unif.omega1 / 2.0, unif.omega2 / 2.0,
                                 (unif.omega1 + unif.omega2) / 2.0};
        return match(cands, X0);
    }
    cd z2 = elliptic_log(E, unif, P2);
    std::vector<cd> cands;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            cands.push_back((z2 + static_cast<double>(i) * unif.omega1 +
                             static_cast<double>(j) * unif.omega2) /
                            2.0);
    return match(cands, X0);
}

double lambda_arch_normalized(cd tau, cd z_norm) {
    double imt = tau.imag();
    double y = z_norm.imag() / imt;
    double x = z_norm.real() - y * tau.real();
    x -= std::floor(x);
    y -= std::floor(y);
    cd z = x + y * tau;
    cd q = std::exp(cd(0, 2 * kPi) * tau);
    cd qz = std::exp(cd(0, 2 * kPi) * z);
    double absq = std::abs(q);
    if (std::abs(1.0 - qz) < 1e-300)
        throw bad_input("lambda_arch: z is a lattice point (pole of the local height)");
    double val = -0.5 * (y * y - y + 1.0 / 6.0) * std::log(absq);
    val -= std::log(std::abs(1.0 - qz));
    // tail after N terms bounded by 2|q|^{N+1}/(1-|q|)-style envelope
    cd qn = q;
    for (int n = 1; n < 2000; ++n) {
        val -= std::log(std::abs((1.0 - qn * qz) * (1.0 - qn / qz)));
        qn *= q;
        if (std::abs(qn) < 1e-18 * (1 - absq)) break;
    }
    return val;
}

LocalHeightValue local_height_arch(const Uniformization& unif, cd z) {
    LocalHeightValue v;
    v.method = LocalMethod::kArchSeries;
    v.value = lambda_arch_normalized(unif.tau, z / unif.omega1);
    return v;
}

BigRational b2_polynomial(const BigRational& x) {
    BigRational r = x * x - x + BigRational(1, 6);
    r.canonicalize();
    return r;
}

BigRational b2_inner_integral_exact() {
    // int_0^1 (y^2 - y + 1/6) dy = 1/3 - 1/2 + 1/6
    BigRational r = BigRational(1, 3) - BigRational(1, 2) + BigRational(1, 6);
    r.canonicalize();
    return r;
}

MultFormulaValue local_height_mult_formula(const BigRational& v_q0, const BigRational& v_qv,
                                           const BigRational& v_one_minus_q0) {
    if (v_qv <= 0) throw bad_input("local_height_mult_formula: v(q_v) > 0 required");
    BigRational ratio = v_q0 / v_qv;
    ratio.canonicalize();
    if (!(ratio > 0) || ratio > 1)
        throw bad_input("local_height_mult_formula: ratio v(q0)/v(qv) outside (0, 1]");
    MultFormulaValue out;
    // lambda = -(1/2) b2(ratio) log|q_v| - log|1-q0|
    //        = [ (1/2) b2(ratio) v(q_v) + v(1-q0) ] log p
    out.lower_bound_over_logp = BigRational(1, 2) * b2_polynomial(ratio) * v_qv;
    out.lower_bound_over_logp.canonicalize();
    out.lambda_over_logp = out.lower_bound_over_logp + v_one_minus_q0;
    out.lambda_over_logp.canonicalize();
    return out;
}

namespace {

// Is the reduction of P mod p a nonsingular point of the reduced curve?
bool reduces_to_nonsingular(const WeierstrassCurve& E, const CurvePoint& P, std::uint64_t p) {
    // P with v_p(x) < 0 reduces to O, which is nonsingular.
    BigInt bp(static_cast<unsigned long>(p));
    Valuation vx = vp_rational(P.x(), bp);
    if (!vx.is_infinite() && vx.value() < 0) return true;
    auto red = [&](const BigRational& r) -> std::uint64_t {
        BigInt num = r.get_num() % bp;
        if (num < 0) num += bp;
        BigInt den = r.get_den() % bp;
        BigInt inv;
        if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), bp.get_mpz_t()))
            throw bad_input("local height: coordinate not p-integral");
        return BigInt(num * inv % bp).get_ui();
    };
    std::uint64_t x = red(P.x()), y = red(P.y());
    std::uint64_t a1 = red(E.a1()), a2 = red(E.a2()), a3 = red(E.a3()), a4 = red(E.a4());
    auto mul = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    // partials of y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6:
    // d/dy = 2y + a1 x + a3 ; d/dx = a1 y - 3x^2 - 2 a2 x - a4
    std::uint64_t dy = (2 * y % p + mul(a1, x) + a3) % p;
    std::uint64_t dx = (mul(a1, y) + 5 * p - 3 * mul(x, x) % p - 2 * mul(a2, x) % p - a4) % p;
    return !(dx == 0 && dy == 0);
}

}  // namespace

LocalSumResult canonical_height_local_sum(const WeierstrassCurve& E, const CurvePoint& P) {
    if (P.is_infinity()) throw bad_input("canonical_height_local_sum: P = O");
    if (!on_curve(E, P)) throw bad_input("canonical_height_local_sum: point not on curve");
    if (!E.has_integral_coefficients())
        throw bad_input("canonical_height_local_sum: integral model required");
    LocalSumResult out;
    Uniformization unif = uniformize(E);
    cd z = elliptic_log(E, unif, P);
    LocalHeightValue arch = local_height_arch(unif, z);
    out.parts.push_back(arch);
    out.value = arch.value;

    // finite places: denominator primes of x(P), plus every bad prime of
    // the model.  The (1/12) v_p(disc) term is what makes the sum of the
    // uniquely normalized local heights equal hhat at bad places where P
    // still reduces to a nonsingular point; at good places it vanishes.
    BigInt den = P.x().get_den();
    BigInt disc_num = abs(E.discriminant().get_num());
    std::vector<std::uint64_t> primes;
    auto collect = [&](BigInt n) {
        for (std::uint64_t p = 2; BigInt(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) <= n; ++p) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                primes.push_back(p);
                while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            }
        }
        if (n > 1) {
            if (!n.fits_ulong_p())
                throw bad_input("canonical_height_local_sum: support prime beyond desk bound");
            primes.push_back(n.get_ui());
        }
    };
    collect(den);
    collect(disc_num);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    BigInt bden(den);
    for (std::uint64_t p : primes) {
        BigInt bp(static_cast<unsigned long>(p));
        long vdisc = vp_rational(E.discriminant(), bp).value();
        Valuation vx = vp_rational(P.x(), bp);
        long dpow = (!vx.is_infinite() && vx.value() < 0) ? -vx.value() : 0;
        if (vdisc > 0 && !reduces_to_nonsingular(E, P, p))
            throw bad_input(
                "canonical_height_local_sum: P reduces to the singular point at a bad prime; "
                "multiplicative-reduction local heights from points are out of scope");
        LocalHeightValue v;
        v.prime = p;
        v.method = vdisc > 0 ? LocalMethod::kMultFormula : LocalMethod::kGoodReduction;
        v.value = (0.5 * dpow + vdisc / 12.0) * std::log(static_cast<double>(p));
        out.parts.push_back(v);
        out.value += v.value;
    }
    return out;
}

HaarCheckResult haar_integral_check(const Uniformization& unif, int grid_n, double eps,
                                    int jensen_count) {
    if (grid_n < 64) throw bad_input("haar_integral_check: grid_n >= 64");
    HaarCheckResult res;
    res.b2_term = to_double(b2_inner_integral_exact());

    cd tau = unif.tau;
    cd q = unif.q;
    double imt = tau.imag();

    // per-term Jensen checks for -log|1 - q^n q(z)^{+1}|
    for (int n = 1; n <= jensen_count; ++n) {
        double tot = 0;
        for (int i = 0; i < grid_n; ++i)
            for (int j = 0; j < grid_n; ++j) {
                double x = (i + 0.5) / grid_n, y = (j + 0.5) / grid_n;
                cd z = x + y * tau;
                cd qz = std::exp(cd(0, 2 * kPi) * z);
                tot += std::log(std::abs(1.0 - std::pow(q, n) * qz));
            }
        res.jensen_terms.push_back(tot / (static_cast<double>(grid_n) * grid_n));
    }

    // total integral with the epsilon-disk handled analytically:
    // lambda(z) ~ -log(2 pi d(z)) near the lattice point
    double tot = 0;
    long used = 0;
    double sum_circle = 0;
    int circle_k = 16;
    for (int k = 0; k < circle_k; ++k) {
        cd zz = (eps / std::sqrt(2.0)) * std::exp(cd(0, 2 * kPi * (k + 0.3) / circle_k));
        sum_circle += lambda_arch_normalized(tau, zz) + std::log(2 * kPi * std::abs(zz));
    }
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            double x = (i + 0.5) / grid_n, y = (j + 0.5) / grid_n;
            cd z = x + y * tau;
            double d = std::min({std::abs(z), std::abs(z - 1.0), std::abs(z - tau),
                                 std::abs(z - 1.0 - tau)});
            if (d < eps) continue;
            tot += lambda_arch_normalized(tau, z);
            ++used;
        }
    tot /= static_cast<double>(grid_n) * grid_n;
    // analytic mass of -log(2 pi r) over the excluded disk, plus the smooth
    // remainder sampled on a circle inside it
    double corr = kPi * eps * eps * (0.5 - std::log(2 * kPi * eps)) / imt;
    corr += (sum_circle / circle_k) * (kPi * eps * eps) / imt;
    res.total = tot + corr;
    (void)used;
    return res;
}

}  // namespace heightgap
