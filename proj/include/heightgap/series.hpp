#pragma once

// Truncated formal power series in one and two variables over an exact
// coefficient ring (rationals or capped p-adics).  Coefficients are held
// sparsely; multiplication accumulates densely up to the truncation
// order, which keeps the large-but-structured series of the formal group
// computations cheap without giving up sparse storage.

#include <map>
#include <utility>
#include <vector>

#include "heightgap/exact.hpp"
#include "heightgap/padic.hpp"

namespace heightgap {

template <class C>
struct coeff_traits {
    static bool is_zero(const C& c) { return c == C(0); }
    static C invert(const C& c) { return C(1) / c; }
};

template <>
struct coeff_traits<PadicElement> {
    static bool is_zero(const PadicElement& c) { return c.is_exact_zero(); }
    static PadicElement invert(const PadicElement& c) { return c.inverse(); }
};

template <class C>
class Series1 {
  public:
    explicit Series1(long order) : order_(order) {
        if (order < 1) throw bad_input("Series1: order >= 1");
    }
    static Series1 zero(long order) { return Series1(order); }
    static Series1 monomial(long order, long deg, C c) {
        Series1 s(order);
        s.set(deg, std::move(c));
        return s;
    }
    static Series1 identity(long order) { return monomial(order, 1, C(1)); }

    long order() const { return order_; }
    const std::map<long, C>& coeffs() const { return c_; }

    C get(long deg) const {
        auto it = c_.find(deg);
        return it == c_.end() ? C(0) : it->second;
    }
    void set(long deg, C v) {
        if (deg < 0) throw bad_input("Series1: negative degree");
        if (deg >= order_) return;
        if (coeff_traits<C>::is_zero(v))
            c_.erase(deg);
        else
            c_[deg] = std::move(v);
    }

    Series1 truncated(long order) const {
        Series1 r(std::min(order, order_));
        for (const auto& [d, v] : c_)
            if (d < r.order_) r.c_[d] = v;
        return r;
    }
    // re-window to any order (extension pads with zeros)
    Series1 with_order(long order) const {
        Series1 r(order);
        for (const auto& [d, v] : c_)
            if (d < order) r.c_[d] = v;
        return r;
    }

    friend Series1 operator+(const Series1& a, const Series1& b) {
        Series1 r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [d, v] : b.c_)
            if (d < r.order_) r.set(d, r.get(d) + v);
        return r;
    }
    friend Series1 operator-(const Series1& a, const Series1& b) {
        Series1 r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [d, v] : b.c_)
            if (d < r.order_) r.set(d, r.get(d) - v);
        return r;
    }
    friend Series1 operator*(const Series1& a, const Series1& b) {
        long order = std::min(a.order_, b.order_);
        std::vector<C> acc(order, C(0));
        for (const auto& [i, ai] : a.c_) {
            if (i >= order) break;
            for (const auto& [j, bj] : b.c_) {
                if (i + j >= order) break;
                acc[i + j] = acc[i + j] + ai * bj;
            }
        }
        Series1 r(order);
        for (long d = 0; d < order; ++d)
            if (!coeff_traits<C>::is_zero(acc[d])) r.c_[d] = std::move(acc[d]);
        return r;
    }
    Series1 scaled(const C& k) const {
        Series1 r(order_);
        for (const auto& [d, v] : c_) r.set(d, v * k);
        return r;
    }
    Series1 operator-() const { return scaled(C(-1)); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    long low_degree() const { return c_.empty() ? -1 : c_.begin()->first; }

    Series1 derivative() const {
        Series1 r(order_);
        for (const auto& [d, v] : c_)
            if (d >= 1) r.set(d - 1, v * C(static_cast<long>(d)));
        return r;
    }

    // 1/this; constant term must be invertible.
    Series1 inverse() const;

    bool operator==(const Series1& o) const { return order_ == o.order_ && c_ == o.c_; }

  private:
    long order_;
    std::map<long, C> c_;
};

// outer(inner); inner must have zero constant term.
template <class C>
Series1<C> series_compose(const Series1<C>& outer, const Series1<C>& inner) {
    if (!coeff_traits<C>::is_zero(inner.get(0)))
        throw bad_input("series_compose: inner constant term must vanish");
    long order = std::min(outer.order(), inner.order());
    Series1<C> res(order);
    long top = outer.degree();
    if (top < 0) return res;
    // Horner from the top degree down
    for (long d = top; d >= 0; --d) {
        if (d != top) res = res * inner;
        C cd = outer.get(d);
        if (!coeff_traits<C>::is_zero(cd)) res.set(0, res.get(0) + cd);
    }
    return res;
}

template <class C>
Series1<C> Series1<C>::inverse() const {
    C c0 = get(0);
    if (coeff_traits<C>::is_zero(c0)) throw bad_input("Series1::inverse: zero constant term");
    C c0i = coeff_traits<C>::invert(c0);
    // Newton: g <- g (2 - f g)
    Series1 g(1);
    g.set(0, c0i);
    long n = 1;
    while (n < order_) {
        n = std::min(2 * n, order_);
        Series1 gn = g.with_order(n);
        Series1 t = truncated(n) * gn;
        Series1 two(n);
        two.set(0, C(2));
        g = gn * (two - t);
    }
    return g.with_order(order_);
}

// Compositional inverse: h with g(h(T)) = T = h(g(T)) mod T^order.
template <class C>
Series1<C> series_reversion(const Series1<C>& g) {
    if (!coeff_traits<C>::is_zero(g.get(0)))
        throw bad_input("series_reversion: constant term must vanish");
    C g1 = g.get(1);
    if (coeff_traits<C>::is_zero(g1))
        throw bad_input("series_reversion: linear coefficient not invertible");
    long order = g.order();
    Series1<C> h(2);
    h.set(1, coeff_traits<C>::invert(g1));
    long n = 2;
    while (n < order) {
        n = std::min(2 * n, order);
        Series1<C> hc = h.with_order(n);
        // Newton: h <- h - (g(h) - T) / g'(h)
        Series1<C> gh = series_compose(g.truncated(n), hc);
        Series1<C> err = gh - Series1<C>::identity(n);
        Series1<C> gph = series_compose(g.derivative().with_order(n), hc);
        h = hc - err * gph.inverse();
    }
    return h.with_order(order);
}

template <class C>
class Series2 {
  public:
    explicit Series2(long order) : order_(order) {
        if (order < 1) throw bad_input("Series2: order >= 1");
    }
    long order() const { return order_; }
    using Key = std::pair<long, long>;
    const std::map<Key, C>& coeffs() const { return c_; }

    C get(long i, long j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? C(0) : it->second;
    }
    void set(long i, long j, C v) {
        if (i < 0 || j < 0) throw bad_input("Series2: negative degree");
        if (i + j >= order_) return;
        if (coeff_traits<C>::is_zero(v))
            c_.erase({i, j});
        else
            c_[{i, j}] = std::move(v);
    }
    Series2 truncated(long order) const {
        Series2 r(std::min(order, order_));
        for (const auto& [k, v] : c_)
            if (k.first + k.second < r.order_) r.c_[k] = v;
        return r;
    }
    friend Series2 operator+(const Series2& a, const Series2& b) {
        Series2 r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [k, v] : b.c_)
            if (k.first + k.second < r.order_) r.set(k.first, k.second, r.get(k.first, k.second) + v);
        return r;
    }
    friend Series2 operator-(const Series2& a, const Series2& b) {
        Series2 r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [k, v] : b.c_)
            if (k.first + k.second < r.order_) r.set(k.first, k.second, r.get(k.first, k.second) - v);
        return r;
    }
    friend Series2 operator*(const Series2& a, const Series2& b) {
        long order = std::min(a.order_, b.order_);
        Series2 r(order);
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_) {
                long i = ka.first + kb.first, j = ka.second + kb.second;
                if (i + j < order) r.set(i, j, r.get(i, j) + va * vb);
            }
        return r;
    }
    Series2 scaled(const C& k) const {
        Series2 r(order_);
        for (const auto& [key, v] : c_) r.set(key.first, key.second, v * k);
        return r;
    }
    bool is_zero() const { return c_.empty(); }
    bool operator==(const Series2& o) const { return order_ == o.order_ && c_ == o.c_; }

    // re-window to any order (extension pads with zeros)
    Series2 with_order(long order) const {
        Series2 r(order);
        for (const auto& [k, v] : c_)
            if (k.first + k.second < order) r.c_[k] = v;
        return r;
    }

    // 1/this for a unit constant term (Newton iteration on total degree)
    Series2 inverse_unit() const {
        C c0 = get(0, 0);
        if (coeff_traits<C>::is_zero(c0)) throw bad_input("Series2::inverse_unit: not a unit");
        Series2 g(1);
        g.set(0, 0, coeff_traits<C>::invert(c0));
        long n = 1;
        while (n < order_) {
            n = std::min(2 * n, order_);
            Series2 gn = g.with_order(n);
            Series2 two(n);
            two.set(0, 0, C(2));
            g = gn * (two - truncated(n) * gn);
        }
        return g.with_order(order_);
    }

    // swap the two variables
    Series2 transposed() const {
        Series2 r(order_);
        for (const auto& [k, v] : c_) r.set(k.second, k.first, v);
        return r;
    }

  private:
    long order_;
    std::map<Key, C> c_;
};

// two_var(g(T), h(T)); g, h with zero constant term.
template <class C>
Series1<C> series_compose2(const Series2<C>& f, const Series1<C>& g, const Series1<C>& h) {
    if (!coeff_traits<C>::is_zero(g.get(0)) || !coeff_traits<C>::is_zero(h.get(0)))
        throw bad_input("series_compose2: arguments need zero constant term");
    long order = std::min({f.order(), g.order(), h.order()});
    // group by X-degree: f = sum_i X^i f_i(Y); evaluate f_i at h, then Horner in g
    std::map<long, Series1<C>> rows;
    for (const auto& [k, v] : f.coeffs()) {
        auto [it, fresh] = rows.try_emplace(k.first, Series1<C>(order));
        it->second.set(k.second, v);
    }
    Series1<C> res(order);
    long top = rows.empty() ? -1 : rows.rbegin()->first;
    for (long i = top; i >= 0; --i) {
        if (i != top) res = res * g;
        auto it = rows.find(i);
        if (it != rows.end()) res = res + series_compose(it->second, h);
    }
    return res;
}

// outer([2-var argument]); argument with zero constant term.
template <class C>
Series2<C> series_compose_1into2(const Series1<C>& outer, const Series2<C>& arg) {
    if (!coeff_traits<C>::is_zero(arg.get(0, 0)))
        throw bad_input("series_compose_1into2: constant term must vanish");
    long order = std::min(outer.order(), arg.order());
    Series2<C> res(order);
    long top = outer.degree();
    for (long d = top; d >= 0; --d) {
        if (d != top) res = res * arg;
        C cd = outer.get(d);
        if (!coeff_traits<C>::is_zero(cd)) res.set(0, 0, res.get(0, 0) + cd);
    }
    return res;
}

using QSeries1 = Series1<BigRational>;
using QSeries2 = Series2<BigRational>;

}  // namespace heightgap
