#pragma once

#include "cycleforge/bigfloat.hpp"
#include "cycleforge/rational.hpp"

#include <string>
#include <utility>

namespace cf {

// Element a + b*sqrt(3) of the real quadratic field Q(sqrt(3)).
// Arithmetic is exact; sign queries resolve through a^2 vs 3b^2, which
// is decisive because sqrt(3) is irrational.
struct QS3 {
    Rat a, b;

    QS3() : a(0), b(0) {}
    QS3(long v) : a(v), b(0) {}       // NOLINT: implicit by design
    QS3(Rat v) : a(std::move(v)), b(0) {}
    QS3(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    static QS3 sqrt3() { return QS3(Rat(0), Rat(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    int sign() const {
        if (b == 0) return sgn(a);
        if (a == 0) return sgn(b);
        if (sgn(a) == sgn(b)) return sgn(a);
        return a * a > 3 * b * b ? sgn(a) : sgn(b);
    }

    QS3 inv() const {
        if (is_zero()) throw DomainError("QS3: division by zero");
        Rat n = a * a - 3 * b * b;
        return QS3(a / n, -b / n);
    }

    QS3 operator-() const { return QS3(-a, -b); }
    QS3& operator+=(const QS3& o) { a += o.a; b += o.b; return *this; }
    QS3& operator-=(const QS3& o) { a -= o.a; b -= o.b; return *this; }
    QS3& operator*=(const QS3& o) {
        Rat na = a * o.a + 3 * b * o.b;
        b = a * o.b + b * o.a;
        a = std::move(na);
        return *this;
    }
    QS3& operator/=(const QS3& o) { return *this *= o.inv(); }

    friend QS3 operator+(QS3 x, const QS3& y) { return x += y; }
    friend QS3 operator-(QS3 x, const QS3& y) { return x -= y; }
    friend QS3 operator*(QS3 x, const QS3& y) { return x *= y; }
    friend QS3 operator/(QS3 x, const QS3& y) { return x /= y; }
    friend bool operator==(const QS3& x, const QS3& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QS3& x, const QS3& y) { return !(x == y); }
};

inline Big to_big(const QS3& v) { return to_big(v.a) + to_big(v.b) * big_sqrt3(); }

// "a", "b*s3", or "a+b*s3" with rational a, b.
std::string qs3_str(const QS3& v);

} // namespace cf
