#include "heightgap/heights.hpp"

#include <algorithm>
#include <cmath>

namespace heightgap {

namespace {

double log_abs_big(const BigInt& n) {
    if (n == 0) throw bad_input("log of zero");
    long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp) * std::log(2.0);
}

std::complex<double> eval_cpoly(const std::vector<std::complex<double>>& c,
                                std::complex<double> z) {
    std::complex<double> r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
}

}  // namespace

std::vector<RootBox> complex_roots(const IntPoly& fin) {
    IntPoly f = fin;
    ipoly_trim(f);
    long n = ipoly_degree(f);
    if (n < 1) throw bad_input("complex_roots: degree >= 1 required");
    std::vector<std::complex<double>> c(n + 1);
    for (long i = 0; i <= n; ++i) {
        double d = f[i].get_d();
        if (!std::isfinite(d)) throw bad_input("complex_roots: coefficients beyond double range");
        c[i] = d;
    }
    std::vector<std::complex<double>> dc(n);
    for (long i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<double>(i);

    // strip zero roots up front
    long zero_roots = 0;
    while (zero_roots <= n && std::abs(c[zero_roots]) == 0.0) ++zero_roots;
    std::vector<std::complex<double>> cc(c.begin() + zero_roots, c.end());
    long m = n - zero_roots;

    std::vector<std::complex<double>> z(m);
    // Cauchy-style initial radius
    double r0 = 0;
    for (long i = 0; i < m; ++i)
        r0 = std::max(r0, std::pow(std::abs(cc[i] / cc[m]), 1.0 / (m - i)));
    r0 = std::max(r0 * 1.2, 0.5);
    for (long i = 0; i < m; ++i) {
        double th = 2 * M_PI * (i + 0.25) / m + 0.42;
        z[i] = std::polar(r0 * (1.0 + 0.05 * std::sin(3.0 * i)), th);
    }
    std::vector<std::complex<double>> dcc(m);
    for (long i = 1; i <= m; ++i) dcc[i - 1] = cc[i] * static_cast<double>(i);

    for (int it = 0; it < 400; ++it) {
        double moved = 0;
        for (long i = 0; i < m; ++i) {
            std::complex<double> fz = eval_cpoly(cc, z[i]);
            std::complex<double> fpz = eval_cpoly(dcc, z[i]);
            std::complex<double> ratio = (fpz == std::complex<double>(0)) ? 0.0 : fz / fpz;
            std::complex<double> s = 0;
            for (long j = 0; j < m; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            std::complex<double> denom = 1.0 - ratio * s;
            std::complex<double> step = (std::abs(denom) < 1e-300) ? ratio : ratio / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (moved < 1e-15) break;
    }

    std::vector<RootBox> out;
    for (long k = 0; k < zero_roots; ++k) out.push_back({{0.0, 0.0}, 0.0});
    for (long i = 0; i < m; ++i) {
        // |f(z)| / (|lc| prod_{j != i} |z - z_j|) bounds the distance to the
        // nearest true root (product formula over the true roots)
        double prod = std::abs(cc[m]);
        for (long j = 0; j < m; ++j)
            if (j != i) prod *= std::abs(z[i] - z[j]);
        double fz = std::abs(eval_cpoly(cc, z[i]));
        double rad = (prod > 0) ? m * fz / prod : 1e-6;
        out.push_back({z[i], rad * 2 + 1e-15});
    }
    return out;
}

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, std::string label)
    : poly_(std::move(minpoly)), label_(std::move(label)) {
    ipoly_trim(poly_);
    long n = ipoly_degree(poly_);
    if (n < 1) throw bad_input("AlgebraicNumber: degree >= 1 required");
    if (n > kDeskDegreeBound)
        throw bad_input("AlgebraicNumber: degree beyond desk bound 24 (irreducibility not certified)");
    if (ipoly_content(poly_) != 1 && ipoly_content(poly_) != -1)
        poly_ = ipoly_primitive(std::move(poly_));
    if (poly_[n] < 0)
        for (auto& c : poly_) c = -c;
    if (poly_[0] == 0) throw bad_input("AlgebraicNumber: zero is not represented here");
    if (!ipoly_is_irreducible(poly_))
        throw bad_input("AlgebraicNumber: minimal polynomial must be irreducible");
}

std::complex<double> AlgebraicNumber::numeric_value() const {
    auto roots = complex_roots(poly_);
    auto best = roots[0].center;
    for (const auto& r : roots) {
        if (std::abs(r.center) > std::abs(best) + 1e-13 ||
            (std::abs(std::abs(r.center) - std::abs(best)) <= 1e-13 &&
             std::arg(r.center) > std::arg(best) + 1e-13))
            best = r.center;
    }
    return best;
}

HeightValue weil_height(const AlgebraicNumber& alpha) {
    const IntPoly& f = alpha.minpoly();
    long n = ipoly_degree(f);
    if (n == 1) {
        // exact rational path: alpha = -c0/c1, h = log max(|c0|, |c1|)
        HeightValue h;
        h.value = log_abs_big(abs(f[0]) >= abs(f[1]) ? f[0] : f[1]);
        h.error_bound = 0;
        return h;
    }
    auto roots = complex_roots(f);
    double sum = log_abs_big(f[n]);
    double err = 0;
    for (const auto& rb : roots) {
        double a = std::abs(rb.center);
        sum += std::log(std::max(1.0, a));
        double lo = std::max(1.0, a - rb.radius), hi = std::max(1.0, a + rb.radius);
        err += std::log(hi) - std::log(lo);
    }
    HeightValue h;
    h.value = sum / static_cast<double>(n);
    h.error_bound = err / static_cast<double>(n) + 1e-15 * (1 + std::fabs(h.value));
    if (h.value < 0 && h.value > -h.error_bound) h.value = std::max(h.value, 0.0);
    return h;
}

double weil_height_rational(const BigRational& x) {
    if (x == 0) return 0.0;
    BigInt num = abs(x.get_num());
    BigInt den = x.get_den();
    return log_abs_big(num >= den ? num : den);
}

bool is_root_of_unity(const AlgebraicNumber& alpha) {
    long n = alpha.degree();
    // phi(L) = n forces L <= 2n^2 + 2 comfortably in this range
    for (unsigned long L = 1; L <= static_cast<unsigned long>(2 * n * n + 2); ++L) {
        if (euler_phi(L) != static_cast<unsigned long>(n)) continue;
        // does minpoly divide T^L - 1 ?
        IntPoly tl(L + 1, BigInt(0));
        tl[0] = -1;
        tl[L] = 1;
        if (ipoly_divides(alpha.minpoly(), tl)) return true;
    }
    return false;
}

namespace {

// pick the irreducible factor of H vanishing (numerically) at value
AlgebraicNumber pick_factor(const IntPoly& H, std::complex<double> value, const char* who) {
    auto fac = ipoly_factor(H);
    const IntPoly* best = nullptr;
    double bestres = 1e300;
    for (const auto& [q, e] : fac) {
        if (ipoly_degree(q) < 1) continue;
        std::vector<std::complex<double>> c;
        double scale = 0;
        for (const auto& x : q) scale = std::max(scale, std::fabs(x.get_d()));
        for (const auto& x : q) c.push_back(x.get_d() / scale);
        double res = std::abs(eval_cpoly(c, value));
        if (res < bestres) {
            bestres = res;
            best = &q;
        }
    }
    if (!best) throw computation_error(std::string(who) + ": no factor matched");
    if (ipoly_degree(*best) > kDeskDegreeBound)
        throw bad_input(std::string(who) + ": composed degree beyond desk bound");
    return AlgebraicNumber(*best);
}

// H(t) = Res_x(f(x), g_t(x)) with g_t integer polynomials in x for each
// integer t; interpolate H from deg_bound+1 points.
IntPoly interpolate_resultant(const IntPoly& f, long deg_bound,
                              const std::function<IntPoly(long)>& g_at) {
    std::vector<BigRational> xs, ys;
    for (long t = 0; static_cast<long>(xs.size()) <= deg_bound; ++t) {
        long tt = (t % 2 == 0) ? t / 2 : -(t / 2 + 1);
        BigInt val = ipoly_resultant(f, g_at(tt));
        xs.emplace_back(tt);
        ys.emplace_back(val);
    }
    // Newton divided differences over Q
    size_t n = xs.size();
    std::vector<BigRational> coef = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    // expand
    std::vector<BigRational> poly = {coef[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        // poly = poly*(x - xs[i]) + coef[i]
        std::vector<BigRational> np(poly.size() + 1, BigRational(0));
        for (size_t k2 = 0; k2 < poly.size(); ++k2) {
            np[k2 + 1] += poly[k2];
            np[k2] -= poly[k2] * xs[i];
        }
        np[0] += coef[i];
        poly = std::move(np);
    }
    // clear denominators
    BigInt lcm = 1;
    for (auto& c : poly) {
        BigInt d = c.get_den();
        BigInt g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        lcm = lcm / g * d;
    }
    IntPoly out;
    for (auto& c : poly) out.push_back(BigInt(c * BigRational(lcm)));
    ipoly_trim(out);
    return out;
}

}  // namespace

AlgebraicNumber power_of(const AlgebraicNumber& a, long k) {
    if (k == 0) throw bad_input("power_of: k = 0 gives the rational 1");
    const IntPoly& f = a.minpoly();
    long n = ipoly_degree(f);
    long kk = std::labs(k);
    // H(t) = Res_x(f(x), t - x^kk) up to sign, degree n in t
    auto H = interpolate_resultant(f, n, [&](long t) {
        IntPoly g(kk + 1, BigInt(0));
        g[0] = t;
        g[kk] = -1;
        return g;
    });
    std::complex<double> v = std::pow(a.numeric_value(), static_cast<double>(kk));
    AlgebraicNumber res = pick_factor(H, v, "power_of");
    if (k < 0) {
        // invert: reverse coefficients
        IntPoly r(res.minpoly().rbegin(), res.minpoly().rend());
        return AlgebraicNumber(ipoly_primitive(std::move(r)));
    }
    return res;
}

AlgebraicNumber product_of(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    const IntPoly& f = a.minpoly();
    const IntPoly& g = b.minpoly();
    long n = ipoly_degree(f), m = ipoly_degree(g);
    if (n * m > kDeskDegreeBound) throw bad_input("product_of: composed degree beyond desk bound");
    // H(t) = Res_x(f(x), x^m g(t/x)), degree <= n*m
    auto H = interpolate_resultant(f, n * m, [&](long t) {
        IntPoly gg(m + 1, BigInt(0));
        BigInt tp = 1;
        for (long j = 0; j <= m; ++j) {
            gg[m - j] = g[j] * tp;
            tp *= t;
        }
        return gg;
    });
    std::complex<double> v = a.numeric_value() * b.numeric_value();
    return pick_factor(H, v, "product_of");
}

AlgebraicNumber sum_of(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    const IntPoly& f = a.minpoly();
    const IntPoly& g = b.minpoly();
    long n = ipoly_degree(f), m = ipoly_degree(g);
    if (n * m > kDeskDegreeBound) throw bad_input("sum_of: composed degree beyond desk bound");
    auto H = interpolate_resultant(f, n * m, [&](long t) {
        // g(t - x) as polynomial in x
        IntPoly gg(m + 1, BigInt(0));
        // expand sum_j g_j (t - x)^j
        for (long j = 0; j <= m; ++j) {
            if (g[j] == 0) continue;
            // (t - x)^j
            BigInt binom = 1;
            BigInt tp = pow_int(BigInt(t), static_cast<unsigned long>(j));
            for (long i = 0; i <= j; ++i) {
                // coefficient of x^i: C(j,i) t^{j-i} (-1)^i
                BigInt term = binom * (t == 0 && j - i > 0 ? BigInt(0)
                                                           : pow_int(BigInt(t), static_cast<unsigned long>(j - i)));
                if (i % 2) term = -term;
                gg[i] += g[j] * term;
                binom = binom * (j - i) / (i + 1);
            }
            (void)tp;
        }
        return gg;
    });
    std::complex<double> v = a.numeric_value() + b.numeric_value();
    return pick_factor(H, v, "sum_of");
}

AlgebraicNumber scale_by(const AlgebraicNumber& a, const BigRational& c) {
    if (c == 0) throw bad_input("scale_by: zero");
    // minpoly of c*alpha: f(x/c) cleared
    const IntPoly& f = a.minpoly();
    long n = ipoly_degree(f);
    IntPoly out(n + 1);
    // f(x/c)*c_den^n... coefficient i: f_i * num^{n-i} * den^{i}
    const BigInt num = c.get_num(), den = c.get_den();
    for (long i = 0; i <= n; ++i)
        out[i] = f[i] * pow_int(num, static_cast<unsigned long>(n - i)) *
                 pow_int(den, static_cast<unsigned long>(i));
    return AlgebraicNumber(ipoly_primitive(std::move(out)));
}

bool HeightLawReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

HeightLawReport height_law_suite(const std::vector<AlgebraicNumber>& samples) {
    HeightLawReport rep;
    auto tol = [](const HeightValue& a, const HeightValue& b) {
        return a.error_bound + b.error_bound + 1e-12;
    };
    for (const auto& a : samples) {
        HeightValue ha = weil_height(a);
        // (c) power identity, k in [-4, 4]
        for (long k : {2L, 3L, -2L}) {
            try {
                AlgebraicNumber ak = power_of(a, k);
                HeightValue hk = weil_height(ak);
                HeightLawCheck c;
                c.name = "h(a^" + std::to_string(k) + ") = |k| h(a)  [" + a.label() + "]";
                c.lhs = hk.value;
                c.rhs = std::labs(k) * ha.value;
                c.holds = std::fabs(c.lhs - c.rhs) <= std::labs(k) * 2 * tol(hk, ha);
                rep.checks.push_back(c);
            } catch (const bad_input& e) {
                rep.skipped.push_back(a.label() + ": " + e.what());
            }
        }
        // (d) root of unity multiple: zeta_3 * a
        try {
            AlgebraicNumber zeta(IntPoly{1, 1, 1}, "zeta3");
            AlgebraicNumber za = product_of(zeta, a);
            HeightValue hz = weil_height(za);
            HeightLawCheck c;
            c.name = "h(zeta a) = h(a)  [" + a.label() + "]";
            c.lhs = hz.value;
            c.rhs = ha.value;
            c.holds = std::fabs(c.lhs - c.rhs) <= 2 * tol(hz, ha);
            rep.checks.push_back(c);
        } catch (const bad_input& e) {
            rep.skipped.push_back(a.label() + ": " + e.what());
        }
        // (b) sum bound with log 2 slack: h(a + a) <= log 2 + 2 h(a)
        try {
            AlgebraicNumber two_a = scale_by(a, BigRational(2));
            HeightValue hs = weil_height(two_a);
            HeightLawCheck c;
            c.name = "h(a+a) <= log2 + 2h(a)  [" + a.label() + "]";
            c.lhs = hs.value;
            c.rhs = std::log(2.0) + 2 * ha.value;
            c.holds = c.lhs <= c.rhs + 2 * tol(hs, ha);
            rep.checks.push_back(c);
        } catch (const bad_input& e) {
            rep.skipped.push_back(a.label() + ": " + e.what());
        }
    }
    // (a) product subadditivity across pairs
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i; j < samples.size(); ++j) {
            try {
                AlgebraicNumber ab = product_of(samples[i], samples[j]);
                HeightValue h = weil_height(ab);
                HeightValue hi = weil_height(samples[i]);
                HeightValue hj = weil_height(samples[j]);
                HeightLawCheck c;
                c.name = "h(ab) <= h(a)+h(b)  [" + samples[i].label() + "," + samples[j].label() + "]";
                c.lhs = h.value;
                c.rhs = hi.value + hj.value;
                c.holds = c.lhs <= c.rhs + h.error_bound + hi.error_bound + hj.error_bound + 1e-11;
                rep.checks.push_back(c);
            } catch (const bad_input& e) {
                rep.skipped.push_back(e.what());
            }
        }
    return rep;
}

}  // namespace heightgap
