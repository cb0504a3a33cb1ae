#pragma once

#include "cycleforge/qs3.hpp"
#include "cycleforge/upoly.hpp"

#include <utility>
#include <vector>

namespace cf {

// Rational function N/D over QS3[r], D != 0, kept reduced with a
// monic denominator.
struct RatFrac {
    SPoly num, den;

    RatFrac() : num(), den(SPoly::constant(QS3(1))) {}
    RatFrac(SPoly n, SPoly d);
    static RatFrac of(const QS3& v) { return RatFrac(SPoly::constant(v), SPoly::constant(QS3(1))); }
    static RatFrac var() { return RatFrac(SPoly::x(), SPoly::constant(QS3(1))); }

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return den.deg() == 0; }

    RatFrac operator-() const;
    friend RatFrac operator+(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator-(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator*(const RatFrac& a, const RatFrac& b);
    friend RatFrac operator/(const RatFrac& a, const RatFrac& b);
    friend bool operator==(const RatFrac& a, const RatFrac& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFrac& a, const RatFrac& b) { return !(a == b); }

    RatFrac derivative() const;
    RatFrac compose(const RatFrac& g) const; // this(g(r))
    QS3 eval(const Rat& x) const;            // exact, den(x) != 0
    Big eval_big(const Big& x) const;
};

// Laurent series sum_{k >= val} c[k - val] * r^k over a ring C.
template <class C>
struct LaurentSeries {
    int val = 0;
    std::vector<C> c; // empty means the zero series

    bool is_zero() const { return c.empty(); }
    C coef(int k) const {
        int i = k - val;
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : C(0);
    }
    int order_end() const { return val + static_cast<int>(c.size()); }
    void trim_front() {
        std::size_t lead = 0;
        while (lead < c.size() && c[lead] == C(0)) ++lead;
        c.erase(c.begin(), c.begin() + static_cast<long>(lead));
        val += static_cast<int>(lead);
        if (c.empty()) val = 0;
    }

    static LaurentSeries zero() { return {}; }
    static LaurentSeries constant(C v, int keep_to) {
        LaurentSeries s;
        if (keep_to <= 0) return s;
        s.val = 0;
        s.c.assign(static_cast<std::size_t>(keep_to), C(0));
        s.c[0] = std::move(v);
        s.trim_front();
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        LaurentSeries s;
        s.val = std::min(a.val, b.val);
        // beyond the shorter window one operand is unknown
        int hi = std::min(a.order_end(), b.order_end());
        if (hi <= s.val) return zero();
        s.c.assign(static_cast<std::size_t>(hi - s.val), C(0));
        for (int k = s.val; k < hi; ++k) s.c[static_cast<std::size_t>(k - s.val)] = a.coef(k) + b.coef(k);
        s.trim_front();
        return s;
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + b.negated();
    }
    LaurentSeries negated() const {
        LaurentSeries s = *this;
        for (auto& v : s.c) v = -v;
        return s;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        // product coefficients are reliable for val_a + val_b +
        // min(len_a, len_b) orders
        LaurentSeries s;
        s.val = a.val + b.val;
        std::size_t out_len = std::min(a.c.size(), b.c.size());
        s.c.assign(out_len, C(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == C(0)) continue;
            for (std::size_t j = 0; j < b.c.size() && i + j < out_len; ++j)
                s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
        }
        s.trim_front();
        return s;
    }
    LaurentSeries scale(const C& v) const {
        if (v == C(0)) return zero();
        LaurentSeries s = *this;
        for (auto& x : s.c) x = x * v;
        return s;
    }
    // Multiplication by r^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries s = *this;
        if (!s.is_zero()) s.val += k;
        return s;
    }
    // Reciprocal of a series with nonzero lowest coefficient, to the
    // same relative length.
    LaurentSeries reciprocal() const {
        if (is_zero()) throw DomainError("series reciprocal of zero");
        if (c[0] == C(0)) throw DomainError("series reciprocal: not trimmed");
        LaurentSeries s;
        s.val = -val;
        s.c.assign(c.size(), C(0));
        C inv0 = C(1) / c[0];
        s.c[0] = inv0;
        for (std::size_t k = 1; k < c.size(); ++k) {
            C acc(0);
            for (std::size_t j = 1; j <= k; ++j) acc = acc + coef_at(j) * s.c[k - j];
            s.c[k] = -inv0 * acc;
        }
        return s;
    }
    // Composition this(g) for g with strictly positive valuation; this
    // must be an ordinary power series (val >= 0).
    LaurentSeries compose(const LaurentSeries& g, int keep_to) const {
        if (val < 0) throw DomainError("series compose: negative valuation base");
        if (!g.is_zero() && g.val < 1)
            throw DomainError("series compose: inner series must vanish at 0");
        LaurentSeries acc = zero();
        LaurentSeries gk = constant(C(1), keep_to);
        for (int i = 0; i < val; ++i) gk = truncate_to(gk * g, keep_to);
        for (std::size_t i = 0; i < c.size(); ++i) {
            acc = acc + gk.scale(c[i]);
            if (i + 1 < c.size()) gk = truncate_to(gk * g, keep_to);
        }
        return truncate_to(acc, keep_to);
    }
    static LaurentSeries truncate_to(LaurentSeries s, int keep_to) {
        if (s.is_zero()) return s;
        if (s.order_end() > keep_to) {
            int keep = keep_to - s.val;
            if (keep <= 0) return zero();
            s.c.resize(static_cast<std::size_t>(keep));
        }
        s.trim_front();
        return s;
    }

  private:
    C coef_at(std::size_t i) const { return i < c.size() ? c[i] : C(0); }
};

using SeriesQ = LaurentSeries<QS3>;

// Window [0, end) of a polynomial as a series, and the Taylor window
// of w = sqrt(1-r^2).
SeriesQ poly_series(const SPoly& p, int end);
SeriesQ w_series(int keep_to);

std::string spoly_str(const SPoly& p, const std::string& var);
std::string spoly_key(const SPoly& p);

// Element (A + B*w)/D of QS3(r)[w], w = sqrt(1-r^2), with polynomial
// A, B and w-free denominator D. Closed under field operations and
// d/dr. Normalized: D monic, gcd(A, B, D) = 1.
struct RatFuncW {
    SPoly A, B, D;

    RatFuncW() : A(), B(), D(SPoly::constant(QS3(1))) {}
    RatFuncW(SPoly a, SPoly b, SPoly d);
    static RatFuncW of(const QS3& v);
    static RatFuncW of_rat(const Rat& v) { return of(QS3(v)); }
    static RatFuncW var();
    static RatFuncW w();
    static RatFuncW of_frac(const RatFrac& f) { return RatFuncW(f.num, SPoly(), f.den); }

    bool is_zero() const { return A.is_zero() && B.is_zero(); }
    bool has_w() const { return !B.is_zero(); }
    bool is_constant() const;
    QS3 constant_value() const; // requires is_constant()

    RatFuncW operator-() const;
    friend RatFuncW operator+(const RatFuncW& a, const RatFuncW& b);
    friend RatFuncW operator-(const RatFuncW& a, const RatFuncW& b);
    friend RatFuncW operator*(const RatFuncW& a, const RatFuncW& b);
    friend RatFuncW operator/(const RatFuncW& a, const RatFuncW& b);
    friend bool operator==(const RatFuncW& a, const RatFuncW& b) {
        return a.A == b.A && a.B == b.B && a.D == b.D;
    }
    friend bool operator!=(const RatFuncW& a, const RatFuncW& b) { return !(a == b); }

    RatFuncW inv() const;
    RatFuncW derivative() const;
    Big eval_big(const Big& x) const;
    SeriesQ series(int keep_to) const;
    std::string str() const;
    std::string key() const;
};

// sqrt(1 - g^2) for a rational function g, resolved inside the
// w-closure: returns sigma, e with sqrt(1-g^2) = sigma * w^e,
// e in {0, 1}, sigma positive at the domain sample point. Throws when
// 1-g^2 is not a square times an optional (1-r^2).
struct SqrtResolution {
    RatFrac sigma;
    int w_exp;
};
SqrtResolution resolve_sqrt_one_minus_sq(const RatFrac& g, const Rat& sample);

// Substitution r -> g into a full RatFuncW; the w part becomes
// B(g) * sigma * w^e via the resolution above.
RatFuncW subst_ratfuncw(const RatFuncW& f, const RatFrac& g, const Rat& sample);

} // namespace cf
