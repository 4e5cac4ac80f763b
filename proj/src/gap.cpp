#include "heightgap/gap.hpp"

#include <cctype>
#include <cmath>

namespace heightgap {

void GapParams::validate() const {
    if (d < 1 || f < 1) throw bad_input("GapParams: d, f >= 1");
    if (p < 5 || !is_prime(BigInt(p))) throw bad_input("GapParams: p must be a prime >= 5");
}

namespace {

// recursive-descent parser over the derivation environment
struct Parser {
    const std::string& s;
    size_t i = 0;
    const std::vector<DerivationEntry>& env;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    double expr() {
        double v = term();
        while (true) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    double term() {
        double v = factor();
        while (true) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }
    double factor() {
        double base = unary();
        if (eat('^')) {
            double e = factor();  // right associative
            return std::pow(base, e);
        }
        return base;
    }
    double unary() {
        skip();
        if (eat('-')) return -unary();
        return atom();
    }
    double atom() {
        skip();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) throw bad_input("eval_formula: missing ')'");
            return v;
        }
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == 'e' ||
                    (s[j] == '-' && j > i && s[j - 1] == 'e')))
                ++j;
            double v = std::stod(s.substr(i, j - i));
            i = j;
            return v;
        }
        if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            if (name == "log") {
                if (!eat('(')) throw bad_input("eval_formula: log needs '('");
                double v = expr();
                if (!eat(')')) throw bad_input("eval_formula: missing ')'");
                return std::log(v);
            }
            if (name == "min" || name == "max") {
                bool mn = name == "min";
                if (!eat('(')) throw bad_input("eval_formula: min/max needs '('");
                double v = expr();
                while (eat(',')) {
                    double w = expr();
                    v = mn ? std::min(v, w) : std::max(v, w);
                }
                if (!eat(')')) throw bad_input("eval_formula: missing ')'");
                return v;
            }
            for (const auto& e : env)
                if (e.name == name) return e.value;
            throw bad_input("eval_formula: unknown name '" + name + "'");
        }
        throw bad_input("eval_formula: parse error in '" + s + "'");
    }
};

double push(std::vector<DerivationEntry>& chain, const std::string& name,
            const std::string& formula) {
    double v = eval_formula(formula, chain);
    chain.push_back({name, formula, v});
    return v;
}

void push_value(std::vector<DerivationEntry>& chain, const std::string& name, double v) {
    chain.push_back({name, "(input)", v});
}

}  // namespace

double eval_formula(const std::string& expr, const std::vector<DerivationEntry>& env) {
    Parser p{expr, 0, env};
    double v = p.expr();
    p.skip();
    if (p.i != expr.size()) throw bad_input("eval_formula: trailing input in '" + expr + "'");
    return v;
}

double unramified_gap(const GapParams& params) {
    params.validate();
    BigInt pf = pow_int(BigInt(params.p), static_cast<unsigned long>(params.f));
    BigInt twod = pow_int(BigInt(2), static_cast<unsigned long>(params.d));
    if (pf <= twod)
        throw bad_input("unramified_gap: vacuous bound (p^f <= 2^d)");
    std::vector<DerivationEntry> chain;
    push_value(chain, "p", params.p);
    push_value(chain, "d", params.d);
    push_value(chain, "f", params.f);
    push(chain, "w", "p^(2*f)");
    return push(chain, "unramified_gap", "log(p^f / 2^d) / (d*(w + 1))");
}

long Q_of_n(long n, long q) {
    if (n < 1) throw bad_input("Q_of_n: n >= 1");
    return n >= 2 ? q : (q - 1) * q;
}

GapReport thm01_constants(const GapParams& params, double universal_c) {
    params.validate();
    if (!(universal_c > 0)) throw bad_input("thm01_constants: universal_c > 0 required");
    GapReport rep;
    rep.params = params;
    rep.universal_c = universal_c;
    auto& ch = rep.derivation;
    push_value(ch, "p", params.p);
    push_value(ch, "d", params.d);
    push_value(ch, "f", params.f);
    push_value(ch, "c", universal_c);
    push(ch, "q", "p^2");
    push(ch, "w", "p^(2*f)");
    rep.unramified_gap = push(ch, "unramified_gap", "log(p^f / 2^d) / (d*(w + 1))");
    rep.C1 = push(ch, "C1", "10*p^4");
    push(ch, "c2_ramified_branch", "f*log(p) / (2*d*p^8)");
    push(ch, "c2_unramified_branch", "log(p^f / 2^d) / (d*q*(q - 1)*(w + 1))");
    rep.c2 = push(ch, "c2", "min(c2_ramified_branch, c2_unramified_branch)");
    rep.C2 = push(ch, "C2", "c2 / 5");
    rep.final_C = push(ch, "final_C", "min(1, c / C1, C2^4 / (1 + 4^5 * C1^(1/4))^4)");
    if (!(rep.final_C > 0)) throw computation_error("thm01_constants: final_C not positive");
    if (!params.meets_prime_floor())
        rep.warnings.push_back("p below the 2^{d+2} prime floor; the constants are evaluated "
                               "but the theorem's hypothesis on the place fails");
    return rep;
}

double frey_rhs(double h, double delta) {
    if (!(h >= 0)) throw bad_input("frey_rhs: h >= 0");
    if (!(delta > 0) || !(delta < 0.5))
        throw bad_input("frey_rhs: delta in the open interval (0, 1/2)");
    return 4.0 / std::pow(delta, 4) * std::pow(h, 0.5 - delta);
}

EllipticGapReport thm02_constants(const GapParams& params, long d_frak_p) {
    params.validate();
    if (d_frak_p < 1) throw bad_input("thm02_constants: local degree >= 1");
    EllipticGapReport rep;
    rep.params = params;
    rep.d_frak_p = d_frak_p;
    BigInt q(params.q());
    BigInt w = params.w();
    rep.amplification = 40 * pow_int(BigInt(params.p), 4) * (w + 1) * (q - 1) * (q - 1);
    auto& ch = rep.derivation;
    push_value(ch, "p", params.p);
    push_value(ch, "d", params.d);
    push_value(ch, "f", params.f);
    push_value(ch, "d_frak_p", d_frak_p);
    push(ch, "q", "p^2");
    push(ch, "w", "p^(2*f)");
    push(ch, "amplification", "40*p^4*(w + 1)*(q - 1)^2");
    rep.local_gap = push(ch, "local_gap", "log(p) / (2*p^6)");
    rep.global_gap = push(ch, "global_gap", "d_frak_p*log(p) / (2*d*p^6)");
    rep.epsilon = push(ch, "epsilon", "global_gap / amplification");
    if (!(rep.epsilon > 0)) throw computation_error("thm02_constants: epsilon not positive");
    return rep;
}

GaloisOrbitFloor galois_orbit_floor(long p) {
    if (p < 5 || !is_prime(BigInt(p))) throw bad_input("galois_orbit_floor: prime p >= 5");
    GaloisOrbitFloor g;
    g.factor = BigRational(1, 1) / BigRational(pow_int(BigInt(p), 4));
    g.factor.canonicalize();
    g.justification = "|H| <= p^4 (H embeds in 1 + (N/p) Mat_2(Z/pZ))";
    return g;
}

BigRational HasseHerbrand::phi(const BigRational& u) const {
    if (u <= 0) return u;  // phi(u) = u for u <= 0 by convention
    BigRational acc(0);
    BigRational prev(0);
    for (size_t k = 0; k < breaks_u.size(); ++k) {
        if (u <= breaks_u[k]) {
            BigRational r = acc + slopes[k] * (u - prev);
            r.canonicalize();
            return r;
        }
        acc += slopes[k] * (breaks_u[k] - prev);
        prev = breaks_u[k];
    }
    BigRational r = acc + slopes.back() * (u - prev);
    r.canonicalize();
    return r;
}

BigRational HasseHerbrand::psi(const BigRational& v) const {
    if (v <= 0) return v;
    BigRational acc(0), prev(0);
    for (size_t k = 0; k < breaks_u.size(); ++k) {
        BigRational seg = slopes[k] * (breaks_u[k] - prev);
        if (v <= acc + seg) {
            BigRational r = prev + (v - acc) / slopes[k];
            r.canonicalize();
            return r;
        }
        acc += seg;
        prev = breaks_u[k];
    }
    BigRational r = prev + (v - acc) / slopes.back();
    r.canonicalize();
    return r;
}

TowerPrediction tower_prediction(long n, long p) {
    if (n < 1) throw bad_input("tower_prediction: n >= 1");
    if (p < 5 || !is_prime(BigInt(p))) throw bad_input("tower_prediction: prime p >= 5");
    TowerPrediction t;
    t.n = n;
    t.p = p;
    long q = p * p;
    BigInt qn1 = pow_int(BigInt(q), static_cast<unsigned long>(n - 1));
    t.degree = qn1 * (q - 1);
    t.group_shape = "Z/" + std::to_string(q - 1) + " x (Z/" +
                    BigInt(pow_int(BigInt(p), static_cast<unsigned long>(n - 1))).get_str() +
                    ")^2";
    BigInt lo = 1;
    for (long k = 1; k <= n; ++k) {
        BigInt hi = pow_int(BigInt(q), static_cast<unsigned long>(k)) - 1;
        RamificationBreak rb;
        rb.interval_lo = static_cast<long>(lo.get_si());
        rb.interval_hi = static_cast<long>(hi.get_si());
        rb.level = k;
        t.breaks.push_back(rb);
        lo = hi + 1;
    }
    // phi slopes: on (q^{k-1}-1, q^k-1], |G_i| = q^{n-k}; |G_0| = q^{n-1}(q-1)
    BigRational g0(t.degree);
    for (long k = 1; k <= n; ++k) {
        if (k < n) {
            t.herbrand.breaks_u.emplace_back(
                pow_int(BigInt(q), static_cast<unsigned long>(k)) - 1);
        }
        BigRational slope =
            BigRational(pow_int(BigInt(q), static_cast<unsigned long>(n - k))) / g0;
        slope.canonicalize();
        t.herbrand.slopes.push_back(slope);
    }
    return t;
}

HasseHerbrand herbrand_relative_level(long k, long q) {
    if (k < 1 || q < 2) throw bad_input("herbrand_relative_level: k >= 1, q >= 2");
    HasseHerbrand h;
    h.breaks_u.emplace_back(pow_int(BigInt(q), static_cast<unsigned long>(k)) - 1);
    h.slopes.emplace_back(1);
    BigRational s(1, q);
    s.canonicalize();
    h.slopes.push_back(s);
    return h;
}

}  // namespace heightgap
