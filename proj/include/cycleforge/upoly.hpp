#pragma once

#include "cycleforge/qs3.hpp"
#include "cycleforge/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cf {

// Dense univariate polynomial over a commutative ring C. Coefficient
// of x^i lives at index i; trailing zeros are always trimmed, so the
// zero polynomial has an empty vector and deg() == -1.
template <class C>
struct UPoly {
    std::vector<C> c;

    UPoly() = default;
    static UPoly constant(C v) {
        UPoly p;
        p.c.push_back(std::move(v));
        p.trim();
        return p;
    }
    static UPoly from(std::vector<C> v) {
        UPoly p;
        p.c = std::move(v);
        p.trim();
        return p;
    }
    static UPoly monomial(std::size_t k, C v = C(1)) {
        UPoly p;
        p.c.assign(k + 1, C(0));
        p.c[k] = std::move(v);
        p.trim();
        return p;
    }
    static UPoly x() { return monomial(1); }

    void trim() {
        while (!c.empty() && c.back() == C(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    C coef(std::size_t i) const { return i < c.size() ? c[i] : C(0); }
    const C& lead() const {
        if (c.empty()) throw DomainError("UPoly: leading coefficient of zero");
        return c.back();
    }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    UPoly& operator+=(const UPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), C(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), C(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly x, const UPoly& y) { return x += y; }
    friend UPoly operator-(UPoly x, const UPoly& y) { return x -= y; }
    friend UPoly operator*(const UPoly& x, const UPoly& y) {
        if (x.is_zero() || y.is_zero()) return UPoly();
        UPoly r;
        r.c.assign(x.c.size() + y.c.size() - 1, C(0));
        for (std::size_t i = 0; i < x.c.size(); ++i) {
            if (x.c[i] == C(0)) continue;
            for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
        }
        r.trim();
        return r;
    }
    friend bool operator==(const UPoly& x, const UPoly& y) { return x.c == y.c; }
    friend bool operator!=(const UPoly& x, const UPoly& y) { return !(x == y); }

    UPoly scale(const C& s) const {
        if (s == C(0)) return UPoly();
        UPoly r = *this;
        for (auto& v : r.c) v = v * s;
        return r;
    }
    // Multiplication by x^k.
    UPoly shifted_up(std::size_t k) const {
        if (is_zero()) return UPoly();
        UPoly r;
        r.c.assign(c.size() + k, C(0));
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
        return r;
    }
    // Product truncated below x^n.
    UPoly mul_trunc(const UPoly& o, std::size_t n) const {
        UPoly r;
        if (is_zero() || o.is_zero() || n == 0) return r;
        r.c.assign(std::min(n, c.size() + o.c.size() - 1), C(0));
        for (std::size_t i = 0; i < c.size() && i < n; ++i) {
            if (c[i] == C(0)) continue;
            for (std::size_t j = 0; j < o.c.size() && i + j < n; ++j)
                r.c[i + j] += c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    UPoly truncated(std::size_t n) const {
        UPoly r = *this;
        if (r.c.size() > n) r.c.resize(n);
        r.trim();
        return r;
    }

    UPoly derivative() const {
        UPoly r;
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * C(static_cast<long>(i));
        r.trim();
        return r;
    }

    C eval(const C& x) const {
        C acc(0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
    // Horner evaluation in another ring; conv lifts coefficients into T.
    template <class T, class Conv>
    T eval_with(const T& x, Conv conv) const {
        T acc = conv(C(0));
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + conv(c[i]);
        return acc;
    }

    UPoly pow(unsigned n) const {
        UPoly acc = constant(C(1)), base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }
    UPoly compose(const UPoly& g) const {
        UPoly acc;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * g + constant(c[i]);
        return acc;
    }
};

// Field-coefficient division with remainder.
template <class C>
std::pair<UPoly<C>, UPoly<C>> divmod(const UPoly<C>& a, const UPoly<C>& b) {
    if (b.is_zero()) throw DomainError("UPoly: division by zero polynomial");
    UPoly<C> q, r = a;
    C inv_lead = C(1) / b.lead();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        std::size_t shift = static_cast<std::size_t>(r.deg() - b.deg());
        C factor = r.lead() * inv_lead;
        q += UPoly<C>::monomial(shift, factor);
        r -= b.shifted_up(shift).scale(factor);
    }
    return {q, r};
}

template <class C>
UPoly<C> operator/(const UPoly<C>& a, const UPoly<C>& b) { return divmod(a, b).first; }
template <class C>
UPoly<C> operator%(const UPoly<C>& a, const UPoly<C>& b) { return divmod(a, b).second; }

// Monic gcd over a field; gcd(0, 0) = 0.
template <class C>
UPoly<C> gcd_monic(UPoly<C> a, UPoly<C> b) {
    while (!b.is_zero()) {
        UPoly<C> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scale(C(1) / a.lead());
    return a;
}

// Squarefree factors with multiplicities (Yun), field coefficients of
// characteristic zero. Factors are monic; the unit is dropped.
template <class C>
std::vector<std::pair<UPoly<C>, unsigned>> squarefree_decomposition(const UPoly<C>& p) {
    std::vector<std::pair<UPoly<C>, unsigned>> out;
    if (p.deg() <= 0) return out;
    UPoly<C> d = p.derivative();
    UPoly<C> g = gcd_monic(p, d);
    UPoly<C> w = p / g, y = d / g;
    unsigned mult = 1;
    while (w.deg() > 0) {
        UPoly<C> z = y - w.derivative();
        UPoly<C> f = gcd_monic(w, z);
        if (f.deg() > 0) out.emplace_back(f, mult);
        w = w / f;
        y = z / f;
        ++mult;
    }
    return out;
}

using QPoly = UPoly<Rat>;
using SPoly = UPoly<QS3>;

// Writes p = content * primitive with primitive having coprime integer
// coefficients and positive leading coefficient.
QPoly primitive_part(const QPoly& p, Rat& content);

// Deterministic key for map storage: comma-joined coefficients.
std::string poly_key(const QPoly& p);
std::string poly_str(const QPoly& p, const std::string& var);

// Number of distinct real roots in the open interval (a, b), by Sturm
// chains on the squarefree part; roots at the endpoints are excluded.
int count_roots_open(const QPoly& p, const Rat& a, const Rat& b);

bool positive_on_open(const QPoly& p, const Rat& a, const Rat& b);

// Roots of p in Q, with multiplicity.
std::vector<Rat> rational_roots(const QPoly& p);

// Complete factorization over Q for deg <= 4 (and even polynomials
// reducing there); higher-degree remainders without rational roots are
// kept whole, which is deterministic for the closed set of arguments
// this pipeline produces. Factors are primitive integer polynomials
// with positive leading coefficient.
struct PolyFactorization {
    Rat constant;
    std::vector<std::pair<QPoly, int>> factors;
};
PolyFactorization factor_rational_poly(const QPoly& p);

// Factorization of the argument of a logarithm: every factor is
// normalized positive on (lo, hi) instead of positive-lead, and the
// leftover constant must come out positive. Throws if any factor
// changes sign on the interval.
PolyFactorization factor_log_arg(const QPoly& p, const Rat& lo, const Rat& hi);

} // namespace cf
