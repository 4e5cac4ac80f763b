#include "heightgap/poly_factor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace heightgap {

long ipoly_degree(const IntPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<long>(i);
    return -1;
}

void ipoly_trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
    if (ipoly_degree(a) < 0 || ipoly_degree(b) < 0) return {};
    IntPoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ipoly_trim(r);
    return r;
}

IntPoly ipoly_add(IntPoly a, const IntPoly& b) {
    a.resize(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    ipoly_trim(a);
    return a;
}

IntPoly ipoly_sub(IntPoly a, const IntPoly& b) {
    a.resize(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ipoly_trim(a);
    return a;
}

BigInt ipoly_content(const IntPoly& f) {
    BigInt g = 0;
    for (const auto& c : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly ipoly_primitive(IntPoly f) {
    ipoly_trim(f);
    if (f.empty()) return f;
    BigInt c = ipoly_content(f);
    if (f.back() < 0) c = -c;
    for (auto& x : f) x /= c;
    return f;
}

BigInt ipoly_eval(const IntPoly& f, const BigInt& x) {
    BigInt r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

BigRational ipoly_eval_q(const IntPoly& f, const BigRational& x) {
    BigRational r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + BigRational(f[i]);
    return r;
}

IntPoly ipoly_derivative(const IntPoly& f) {
    IntPoly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
    ipoly_trim(r);
    return r;
}

IntPoly ipoly_divexact(const IntPoly& a, const IntPoly& b) {
    long da = ipoly_degree(a), db = ipoly_degree(b);
    if (db < 0) throw bad_input("ipoly_divexact: division by zero");
    if (da < 0) return {};
    if (da < db) throw computation_error("ipoly_divexact: nonzero remainder");
    IntPoly rem = a;
    IntPoly q(da - db + 1, BigInt(0));
    for (long i = da; i >= db; --i) {
        if (rem[i] == 0) continue;
        BigInt c = rem[i] / b[db];
        if (c * b[db] != rem[i]) throw computation_error("ipoly_divexact: leading division fails");
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    ipoly_trim(rem);
    if (!rem.empty()) throw computation_error("ipoly_divexact: nonzero remainder");
    ipoly_trim(q);
    return q;
}

bool ipoly_divides(const IntPoly& b, const IntPoly& a) {
    long da = ipoly_degree(a), db = ipoly_degree(b);
    if (db < 0) return da < 0;
    if (da < db) return false;
    // pseudo-remainder of a by b vanishes iff b | a over Q; for primitive b
    // Gauss's lemma upgrades that to divisibility over Z
    IntPoly rem = a;
    const BigInt lb = b[db];
    long dr;
    while ((dr = ipoly_degree(rem)) >= db) {
        BigInt c = rem[dr];
        for (auto& x : rem) x *= lb;
        for (long j = 0; j <= db; ++j) rem[dr - db + j] -= c * b[j];
        ipoly_trim(rem);
    }
    return rem.empty();
}

IntPoly ipoly_gcd(IntPoly a, IntPoly b) {
    a = ipoly_primitive(std::move(a));
    b = ipoly_primitive(std::move(b));
    if (ipoly_degree(a) < 0) return b;
    if (ipoly_degree(b) < 0) return a;
    // primitive PRS (contents stripped each step; fine at desk degrees)
    while (true) {
        long da = ipoly_degree(a), db = ipoly_degree(b);
        if (db < 0) return ipoly_primitive(std::move(a));
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        // r = prem(a, b)
        IntPoly rem = a;
        const BigInt lb = b[db];
        long dr;
        while ((dr = ipoly_degree(rem)) >= db) {
            BigInt c = rem[dr];
            for (auto& x : rem) x *= lb;
            for (long j = 0; j <= db; ++j) rem[dr - db + j] -= c * b[j];
            ipoly_trim(rem);
        }
        a = std::move(b);
        b = ipoly_primitive(std::move(rem));
    }
}

BigInt ipoly_resultant(const IntPoly& fin, const IntPoly& gin) {
    IntPoly f = fin, g = gin;
    ipoly_trim(f);
    ipoly_trim(g);
    long n = ipoly_degree(f), m = ipoly_degree(g);
    if (n < 0 || m < 0) return 0;
    if (n == 0) return pow_int(f[0], static_cast<unsigned long>(m));
    if (m == 0) return pow_int(g[0], static_cast<unsigned long>(n));
    long N = n + m;
    // Sylvester matrix, Bareiss fraction-free elimination
    std::vector<std::vector<BigInt>> M(N, std::vector<BigInt>(N, BigInt(0)));
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) M[r][r + j] = f[n - j];
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) M[m + r][r + j] = g[m - j];
    BigInt prev = 1;
    int sign = 1;
    for (long k = 0; k < N - 1; ++k) {
        if (M[k][k] == 0) {
            long piv = -1;
            for (long r = k + 1; r < N; ++r)
                if (M[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (long i = k + 1; i < N; ++i) {
            for (long j = k + 1; j < N; ++j) {
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[N - 1][N - 1] : -M[N - 1][N - 1];
}

namespace {

using u64 = std::uint64_t;

u64 subm(u64 a, u64 b, u64 p) { return (a + p - b % p) % p; }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<unsigned __int128>(a) * b % p; }
u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

using PPoly = std::vector<u64>;  // mod-p polynomial, low degree first

long pdeg(const PPoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i]) return static_cast<long>(i);
    return -1;
}
void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, u64 p) {
    if (pdeg(a) < 0 || pdeg(b) < 0) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    }
    ptrim(r);
    return r;
}

void pdivmod(const PPoly& a, const PPoly& b, PPoly& q, PPoly& r, u64 p) {
    long da = pdeg(a), db = pdeg(b);
    r = a;
    ptrim(r);
    q.assign(da >= db ? da - db + 1 : 1, 0);
    if (da < db) return;
    u64 linv = invm(b[db], p);
    for (long i = da; i >= db; --i) {
        if (static_cast<long>(r.size()) <= i || !r[i]) continue;
        u64 c = mulm(r[i], linv, p);
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) r[i - db + j] = subm(r[i - db + j], mulm(c, b[j], p), p);
    }
    ptrim(r);
    ptrim(q);
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
    ptrim(a);
    ptrim(b);
    while (pdeg(b) >= 0) {
        PPoly q, r;
        pdivmod(a, b, q, r, p);
        a = std::move(b);
        b = std::move(r);
    }
    long d = pdeg(a);
    if (d >= 0) {
        u64 li = invm(a[d], p);
        for (auto& c : a) c = mulm(c, li, p);
    }
    return a;
}

PPoly ppowmod(PPoly base, BigInt e, const PPoly& mod, u64 p) {
    PPoly r = {1};
    PPoly q, rem;
    pdivmod(base, mod, q, rem, p);
    base = rem;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            r = pmul(r, base, p);
            pdivmod(r, mod, q, rem, p);
            r = rem;
        }
        base = pmul(base, base, p);
        pdivmod(base, mod, q, rem, p);
        base = rem;
        e >>= 1;
    }
    return r;
}

// equal-degree splitting (Cantor-Zassenhaus), f squarefree product of
// irreducibles of degree d
void edf(const PPoly& f, long d, u64 p, std::vector<PPoly>& out, u64& seed) {
    long n = pdeg(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    BigInt exp = (pow_int(BigInt(static_cast<unsigned long>(p)), d) - 1) / 2;
    while (true) {
        // pseudo-random polynomial
        PPoly a(n, 0);
        for (long i = 0; i < n; ++i) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            a[i] = (seed >> 33) % p;
        }
        if (pdeg(a) < 1) continue;
        PPoly t = ppowmod(a, exp, f, p);
        if (t.empty()) continue;
        t[0] = subm(t[0], 1, p);
        PPoly g = pgcd(t, f, p);
        long dg = pdeg(g);
        if (dg > 0 && dg < n) {
            PPoly q, r;
            pdivmod(f, g, q, r, p);
            edf(g, d, p, out, seed);
            edf(q, d, p, out, seed);
            return;
        }
    }
}

// factor squarefree monic f mod p into monic irreducibles
std::vector<PPoly> factor_mod_p_squarefree(PPoly f, u64 p) {
    std::vector<PPoly> out;
    u64 seed = 0x9e3779b97f4a7c15ULL ^ (p * 0x2545F4914F6CDD1DULL);
    long d = 1;
    PPoly xq = {0, 1};  // running x^{p^d} mod f
    while (2 * d <= pdeg(f)) {
        xq = ppowmod(xq, BigInt(static_cast<unsigned long>(p)), f, p);
        PPoly t = xq;
        if (t.size() < 2) t.resize(2, 0);
        t[1] = subm(t[1], 1, p);
        PPoly g = pgcd(t, f, p);
        if (pdeg(g) > 0) {
            edf(g, d, p, out, seed);
            PPoly q, r;
            pdivmod(f, g, q, r, p);
            f = q;
            PPoly qq, rr;
            pdivmod(xq, f, qq, rr, p);
            xq = rr;
        }
        ++d;
    }
    if (pdeg(f) > 0) out.push_back(f);
    return out;
}

IntPoly lift_to_z(const PPoly& f, const BigInt& /*unused*/) {
    IntPoly r;
    for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

// symmetric remainder in (-m/2, m/2]
BigInt smod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

IntPoly poly_mod(const IntPoly& f, const BigInt& m) {
    IntPoly r = f;
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    ipoly_trim(r);
    return r;
}

// one Hensel step: f = g*h mod m, s*g + t*h = 1 mod m -> same mod m^2
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t,
                 const BigInt& m) {
    BigInt m2 = m * m;
    auto mod2 = [&](IntPoly v) { return poly_mod(std::move(v), m2); };
    IntPoly e = mod2(ipoly_sub(f, ipoly_mul(g, h)));
    // q, r = divmod(s*e, h) over Z/m^2 with h monic
    auto divmod_monic = [&](const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
        long db = ipoly_degree(b);
        r = poly_mod(a, m2);
        q.assign(std::max<long>(1, static_cast<long>(r.size())), BigInt(0));
        for (long i = ipoly_degree(r); i >= db; --i) {
            BigInt c = r[i] % m2;
            if (c == 0) continue;
            q[i - db] = c;
            for (long j = 0; j <= db; ++j) {
                r[i - db + j] -= c * b[j];
                r[i - db + j] %= m2;
            }
        }
        ipoly_trim(q);
        r = poly_mod(r, m2);
        ipoly_trim(r);
    };
    IntPoly q, r;
    divmod_monic(ipoly_mul(s, e), h, q, r);
    IntPoly g1 = mod2(ipoly_add(ipoly_add(g, ipoly_mul(t, e)), ipoly_mul(q, g)));
    IntPoly h1 = mod2(ipoly_add(h, r));
    // lift the Bezout pair
    IntPoly b = mod2(ipoly_sub(ipoly_add(ipoly_mul(s, g1), ipoly_mul(t, h1)), IntPoly{1}));
    IntPoly c, d;
    divmod_monic(ipoly_mul(s, b), h1, c, d);
    IntPoly s1 = mod2(ipoly_sub(s, d));
    IntPoly t1 = mod2(ipoly_sub(ipoly_sub(t, ipoly_mul(t, b)), ipoly_mul(c, g1)));
    g = g1;
    h = h1;
    s = s1;
    t = t1;
}

// extended gcd of a, b mod p: s a + t b = 1
void bezout_mod_p(const PPoly& a, const PPoly& b, u64 p, IntPoly& s_out, IntPoly& t_out) {
    PPoly r0 = a, r1 = b;
    PPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (pdeg(r1) >= 0) {
        PPoly q, r;
        pdivmod(r0, r1, q, r, p);
        PPoly s2 = r0;  // placeholder
        auto comb = [&](const PPoly& x0, const PPoly& x1) {
            PPoly qq = pmul(q, x1, p);
            PPoly res = x0;
            res.resize(std::max(res.size(), qq.size()), 0);
            for (size_t i = 0; i < qq.size(); ++i) res[i] = subm(res[i], qq[i], p);
            ptrim(res);
            return res;
        };
        PPoly snext = comb(s0, s1), tnext = comb(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(snext);
        t0 = std::move(t1);
        t1 = std::move(tnext);
        (void)s2;
    }
    long d = pdeg(r0);
    if (d != 0) throw computation_error("bezout_mod_p: inputs not coprime");
    u64 inv = invm(r0[0], p);
    for (auto& c : s0) c = mulm(c, inv, p);
    for (auto& c : t0) c = mulm(c, inv, p);
    s_out = lift_to_z(s0, BigInt(0));
    t_out = lift_to_z(t0, BigInt(0));
}

}  // namespace

std::vector<std::pair<IntPoly, int>> ipoly_factor(const IntPoly& fin) {
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = ipoly_primitive(fin);
    long n = ipoly_degree(f);
    if (n <= 0) return out;
    // squarefree decomposition via gcd with derivative
    IntPoly g = ipoly_gcd(f, ipoly_derivative(f));
    if (ipoly_degree(g) > 0) {
        IntPoly core = ipoly_divexact(f, g);
        auto inner = ipoly_factor(core);
        auto rest = ipoly_factor(g);
        std::map<IntPoly, int> merged;
        for (auto& [q, e] : inner) merged[q] += e;
        for (auto& [q, e] : rest) merged[q] += e;
        for (auto& [q, e] : merged) out.emplace_back(q, e);
        return out;
    }
    if (n == 1) {
        out.emplace_back(f, 1);
        return out;
    }

    // choose a prime keeping f squarefree with unchanged degree
    static const u64 kPrimes[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                                  1000099, 1000117, 1000121, 1000133, 1000151,
                                  65537,   131101,  262147,  524309};
    u64 p = 0;
    PPoly fp;
    for (u64 cand : kPrimes) {
        if (mpz_divisible_ui_p(f[n].get_mpz_t(), cand)) continue;
        PPoly fc(n + 1);
        bool ok = true;
        for (long i = 0; i <= n; ++i) {
            BigInt c = f[i] % BigInt(static_cast<unsigned long>(cand));
            if (c < 0) c += static_cast<unsigned long>(cand);
            fc[i] = c.get_ui();
        }
        // squarefree mod p?
        PPoly der;
        for (long i = 1; i <= n; ++i) der.push_back(mulm(fc[i], i % cand, cand));
        ptrim(der);
        PPoly gc = pgcd(fc, der, cand);
        if (pdeg(gc) == 0) {
            p = cand;
            fp = fc;
            ok = true;
        } else
            ok = false;
        if (ok && p) break;
    }
    if (!p) throw computation_error("ipoly_factor: no good prime found");

    // monicize mod p
    u64 li = invm(fp[n], p);
    PPoly fmonic = fp;
    for (auto& c : fmonic) c = mulm(c, li, p);
    std::vector<PPoly> modular = factor_mod_p_squarefree(fmonic, p);
    std::sort(modular.begin(), modular.end(),
              [](const PPoly& a, const PPoly& b) { return pdeg(a) < pdeg(b); });
    if (modular.size() == 1) {
        out.emplace_back(f, 1);
        return out;
    }

    // Landau-Mignotte bound for coefficients of factors of lc * f
    BigInt norm = 0;
    for (const auto& c : f) norm += c * c;
    mpz_sqrt(norm.get_mpz_t(), norm.get_mpz_t());
    norm += 1;
    BigInt bound = (norm + abs(f[n])) * pow_int(BigInt(2), static_cast<unsigned long>(n + 1)) *
                   abs(f[n]) * 2;
    BigInt pk(static_cast<unsigned long>(p));
    int lifts = 0;
    while (pk <= 2 * bound) {
        pk = pk * pk;
        ++lifts;
    }

    // Hensel-lift the factorization pairwise down a factor tree:
    // F = modular[0] * (rest); recurse on rest
    struct Lifted {
        std::vector<IntPoly> factors;
    };
    // iterative: maintain f_cur = product of remaining lifted part
    std::vector<IntPoly> lifted;
    {
        // lift (g, h) pairs recursively
        std::function<void(const IntPoly&, const std::vector<PPoly>&)> lift_tree =
            [&](const IntPoly& target, const std::vector<PPoly>& parts) {
                if (parts.size() == 1) {
                    lifted.push_back(poly_mod(target, pk));
                    return;
                }
                size_t half = parts.size() / 2;
                PPoly gp = {1}, hp = {1};
                for (size_t i = 0; i < half; ++i) gp = pmul(gp, parts[i], p);
                for (size_t i = half; i < parts.size(); ++i) hp = pmul(hp, parts[i], p);
                // target = lc * gp * hp mod p; make g = lc*gp (non-monic ok), h = hp monic
                IntPoly s, t;
                bezout_mod_p(gp, hp, p, s, t);
                IntPoly g = lift_to_z(gp, BigInt(0));
                // scale g by lc(target) mod p so that target = g*h mod p
                long dt = ipoly_degree(target);
                BigInt lc = target[dt];
                {
                    BigInt lcp = lc % BigInt(static_cast<unsigned long>(p));
                    if (lcp < 0) lcp += static_cast<unsigned long>(p);
                    u64 l = lcp.get_ui();
                    for (auto& c : g) c = BigInt(static_cast<unsigned long>(
                                           mulm(static_cast<u64>(c.get_ui()), l, p)));
                    // and s must absorb l^{-1}
                    u64 linv2 = invm(l, p);
                    for (auto& c : s) c = BigInt(static_cast<unsigned long>(
                                           mulm(static_cast<u64>(c.get_ui()), linv2, p)));
                }
                IntPoly h = lift_to_z(hp, BigInt(0));
                BigInt m(static_cast<unsigned long>(p));
                IntPoly ff = target;
                while (m < pk) {
                    hensel_step(ff, g, h, s, t, m);
                    m = m * m;
                }
                // split recursively: g corresponds to parts[0..half), with lc baked in
                std::vector<PPoly> left(parts.begin(), parts.begin() + half);
                std::vector<PPoly> right(parts.begin() + half, parts.end());
                // normalize h monic-side target: g * h = ff mod pk
                lift_tree(g, left);
                lift_tree(h, right);
            };
        // target for the tree: lc-adjusted f
        lift_tree(f, modular);
    }
    // normalize the lifted leaves to be monic mod pk (their leading
    // coefficients are units mod p, so invertible mod pk)
    for (auto& leaf : lifted) {
        long d = ipoly_degree(leaf);
        BigInt inv;
        if (!mpz_invert(inv.get_mpz_t(), leaf[d].get_mpz_t(), pk.get_mpz_t()))
            throw computation_error("ipoly_factor: lifted factor has non-unit lc");
        for (auto& c : leaf) c = c * inv % pk;
        leaf = poly_mod(leaf, pk);
    }

    // recombination
    std::vector<int> alive(lifted.size(), 1);
    IntPoly remaining = f;
    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        long dr = ipoly_degree(remaining);
        BigInt lc = remaining[dr];
        IntPoly prod = {lc};
        for (size_t i : idx) prod = poly_mod(ipoly_mul(prod, lifted[i]), pk);
        // symmetric lift
        for (auto& c : prod) c = smod(c, pk);
        IntPoly cand = ipoly_primitive(prod);
        if (ipoly_degree(cand) < 1) return false;
        if (!ipoly_divides(cand, remaining)) return false;
        out.emplace_back(cand, 1);
        remaining = ipoly_divexact(remaining, cand);
        // re-primitivize: content stays in remaining's lc handling
        remaining = ipoly_primitive(remaining);
        for (size_t i : idx) alive[i] = 0;
        return true;
    };

    size_t r = lifted.size();
    for (size_t take = 1; take <= r; ++take) {
        // iterate subsets of size `take` over alive indices
        std::vector<size_t> live;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (alive[i]) live.push_back(i);
        if (live.size() < take) continue;
        if (take > live.size() / 2 && take < live.size()) continue;  // complements found earlier
        std::vector<size_t> comb(take);
        std::function<bool(size_t, size_t)> rec = [&](size_t start, size_t k) -> bool {
            if (k == take) {
                std::vector<size_t> idx;
                for (size_t i = 0; i < take; ++i) idx.push_back(live[comb[i]]);
                if (try_subset(idx)) return true;
                return false;
            }
            for (size_t i = start; i < live.size(); ++i) {
                comb[k] = i;
                if (rec(i + 1, k + 1)) return true;
            }
            return false;
        };
        while (rec(0, 0)) {
            // a factor was pulled out; restart this cardinality with updated 'alive'
            live.clear();
            for (size_t i = 0; i < lifted.size(); ++i)
                if (alive[i]) live.push_back(i);
            if (live.size() < take) break;
        }
    }
    if (ipoly_degree(remaining) > 0) out.emplace_back(ipoly_primitive(remaining), 1);
    std::sort(out.begin(), out.end());
    return out;
}

bool ipoly_is_irreducible(const IntPoly& f) {
    IntPoly p = ipoly_primitive(f);
    if (ipoly_degree(p) < 1) return false;
    auto fac = ipoly_factor(p);
    return fac.size() == 1 && fac[0].second == 1 &&
           ipoly_degree(fac[0].first) == ipoly_degree(p);
}

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            r -= r / q;
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

IntPoly cyclotomic(unsigned n) {
    // (T^n - 1) / prod_{d | n, d < n} Phi_d
    IntPoly num(n + 1, BigInt(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) num = ipoly_divexact(num, cyclotomic(d));
    return num;
}

}  // namespace heightgap
