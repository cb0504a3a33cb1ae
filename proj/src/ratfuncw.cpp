#include "cycleforge/ratfuncw.hpp"

namespace cf {

RatFrac::RatFrac(SPoly n, SPoly d) {
    if (d.is_zero()) throw DomainError("RatFrac: zero denominator");
    if (n.is_zero()) {
        num = SPoly();
        den = SPoly::constant(QS3(1));
        return;
    }
    SPoly g = gcd_monic(n, d);
    if (g.deg() > 0) {
        n = n / g;
        d = d / g;
    }
    QS3 s = QS3(1) / d.lead();
    num = n.scale(s);
    den = d.scale(s);
}

RatFrac RatFrac::operator-() const {
    RatFrac r = *this;
    r.num = -r.num;
    return r;
}

RatFrac operator+(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFrac operator-(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num * b.den - b.num * a.den, a.den * b.den);
}
RatFrac operator*(const RatFrac& a, const RatFrac& b) {
    return RatFrac(a.num * b.num, a.den * b.den);
}
RatFrac operator/(const RatFrac& a, const RatFrac& b) {
    if (b.is_zero()) throw DomainError("RatFrac: division by zero");
    return RatFrac(a.num * b.den, a.den * b.num);
}

RatFrac RatFrac::derivative() const {
    return RatFrac(num.derivative() * den - num * den.derivative(), den * den);
}

RatFrac RatFrac::compose(const RatFrac& g) const {
    auto lift = [](const QS3& v) { return RatFrac::of(v); };
    RatFrac n = num.eval_with(g, lift);
    RatFrac d = den.eval_with(g, lift);
    return n / d;
}

QS3 RatFrac::eval(const Rat& x) const {
    QS3 d = den.eval(QS3(x));
    if (d.is_zero()) throw DomainError("RatFrac: pole at evaluation point");
    return num.eval(QS3(x)) / d;
}

Big RatFrac::eval_big(const Big& x) const {
    auto lift = [](const QS3& v) { return to_big(v); };
    return num.eval_with(x, lift) / den.eval_with(x, lift);
}

namespace {

SPoly one_minus_r2() {
    return SPoly::from({QS3(1), QS3(0), QS3(-1)});
}

} // namespace

RatFuncW::RatFuncW(SPoly a, SPoly b, SPoly d) {
    if (d.is_zero()) throw DomainError("RatFuncW: zero denominator");
    SPoly g = gcd_monic(gcd_monic(a, b), d);
    if (g.deg() > 0) {
        a = a / g;
        b = b / g;
        d = d / g;
    }
    QS3 s = QS3(1) / d.lead();
    A = a.scale(s);
    B = b.scale(s);
    D = d.scale(s);
}

RatFuncW RatFuncW::of(const QS3& v) {
    return RatFuncW(SPoly::constant(v), SPoly(), SPoly::constant(QS3(1)));
}
RatFuncW RatFuncW::var() {
    return RatFuncW(SPoly::x(), SPoly(), SPoly::constant(QS3(1)));
}
RatFuncW RatFuncW::w() {
    return RatFuncW(SPoly(), SPoly::constant(QS3(1)), SPoly::constant(QS3(1)));
}

bool RatFuncW::is_constant() const {
    return B.is_zero() && D.deg() == 0 && A.deg() <= 0;
}
QS3 RatFuncW::constant_value() const {
    if (!is_constant()) throw DomainError("RatFuncW: not a constant");
    return A.coef(0) / D.coef(0);
}

RatFuncW RatFuncW::operator-() const {
    RatFuncW r = *this;
    r.A = -r.A;
    r.B = -r.B;
    return r;
}

RatFuncW operator+(const RatFuncW& a, const RatFuncW& b) {
    return RatFuncW(a.A * b.D + b.A * a.D, a.B * b.D + b.B * a.D, a.D * b.D);
}
RatFuncW operator-(const RatFuncW& a, const RatFuncW& b) { return a + (-b); }
RatFuncW operator*(const RatFuncW& a, const RatFuncW& b) {
    SPoly w2 = one_minus_r2();
    return RatFuncW(a.A * b.A + a.B * b.B * w2, a.A * b.B + a.B * b.A, a.D * b.D);
}
RatFuncW RatFuncW::inv() const {
    if (is_zero()) throw DomainError("RatFuncW: division by zero");
    SPoly e = A * A - B * B * one_minus_r2();
    return RatFuncW(D * A, -(D * B), e);
}
RatFuncW operator/(const RatFuncW& a, const RatFuncW& b) { return a * b.inv(); }

RatFuncW RatFuncW::derivative() const {
    SPoly w2 = one_minus_r2();
    SPoly r = SPoly::x();
    SPoly a = (A.derivative() * D - A * D.derivative()) * w2;
    SPoly b = (B.derivative() * D - B * D.derivative()) * w2 - r * B * D;
    return RatFuncW(a, b, D * D * w2);
}

Big RatFuncW::eval_big(const Big& x) const {
    auto lift = [](const QS3& v) { return to_big(v); };
    Big num = A.eval_with(x, lift);
    if (!B.is_zero()) num += B.eval_with(x, lift) * sqrt(1 - x * x);
    return num / D.eval_with(x, lift);
}

SeriesQ poly_series(const SPoly& p, int end) {
    SeriesQ s;
    if (p.is_zero() || end <= 0) return s;
    s.val = 0;
    s.c.assign(static_cast<std::size_t>(end), QS3(0));
    for (std::size_t i = 0; i < p.c.size() && i < s.c.size(); ++i) s.c[i] = p.c[i];
    s.trim_front();
    return s;
}

SeriesQ w_series(int keep_to) {
    // sqrt(1-r^2): even series with binomial(1/2, k) coefficients
    SeriesQ s;
    if (keep_to <= 0) return s;
    s.val = 0;
    s.c.assign(static_cast<std::size_t>(keep_to), QS3(0));
    Rat b(1);
    for (int k = 0; 2 * k < keep_to; ++k) {
        if (k > 0) b *= (Rat(1, 2) - (k - 1)) / k;
        s.c[static_cast<std::size_t>(2 * k)] = QS3(b * (k % 2 == 0 ? 1 : -1));
    }
    return s;
}

SeriesQ RatFuncW::series(int keep_to) const {
    if (is_zero()) return SeriesQ();
    int vD = 0;
    while (D.coef(static_cast<std::size_t>(vD)) == QS3(0)) ++vD;
    int ext = keep_to + 2 * vD + 2;
    SeriesQ sD = poly_series(D, ext + vD);
    SeriesQ invD = sD.reciprocal();
    SeriesQ numer = poly_series(A, ext);
    if (!B.is_zero()) numer = numer + poly_series(B, ext) * w_series(ext);
    return SeriesQ::truncate_to(numer * invD, keep_to);
}

std::string spoly_str(const SPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        const QS3& v = p.c[i];
        if (v.is_zero()) continue;
        std::string cs = qs3_str(v);
        bool composite = cs.find('+') != std::string::npos ||
                         cs.find('-', 1) != std::string::npos || cs.find('*') != std::string::npos;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += composite ? "(" + cs + ")" : cs;
            continue;
        }
        if (composite) out += "(" + cs + ")*";
        else if (cs == "-1") out += "-";
        else if (cs != "1") out += cs + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    // fold "+-" produced by negative plain coefficients
    std::string folded;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == '+' && i + 1 < out.size() && out[i + 1] == '-') continue;
        folded += out[i];
    }
    return folded;
}

std::string spoly_key(const SPoly& p) {
    std::string k;
    for (const auto& v : p.c) k += qs3_str(v) + ",";
    return k;
}

std::string RatFuncW::str() const {
    std::string n;
    if (B.is_zero()) n = spoly_str(A, "r");
    else {
        std::string bw = (B.deg() == 0 && B.coef(0) == QS3(1)) ? "w"
                         : "(" + spoly_str(B, "r") + ")*w";
        if (A.is_zero()) n = bw;
        else n = spoly_str(A, "r") + "+" + bw;
        n = "(" + n + ")";
        std::string folded;
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] == '+' && i + 1 < n.size() && n[i + 1] == '-') continue;
            folded += n[i];
        }
        n = folded;
    }
    if (D.deg() == 0 && D.coef(0) == QS3(1)) return n;
    if (B.is_zero() && A.deg() > 0) n = "(" + n + ")";
    return n + "/(" + spoly_str(D, "r") + ")";
}

std::string RatFuncW::key() const {
    return spoly_key(A) + "|" + spoly_key(B) + "|" + spoly_key(D);
}

namespace {

QPoly to_qpoly(const SPoly& p, const char* what) {
    QPoly out;
    out.c.reserve(p.c.size());
    for (const auto& v : p.c) {
        if (!v.is_rational())
            throw DomainError(std::string(what) + ": sqrt(3) coefficients unsupported here");
        out.c.push_back(v.a);
    }
    out.trim();
    return out;
}

bool rat_square_root(const Rat& v, Rat& root) {
    if (v < 0) return false;
    Int nr = sqrt(numerator(v)), dr = sqrt(denominator(v));
    if (nr * nr != numerator(v) || dr * dr != denominator(v)) return false;
    root = Rat(nr, dr);
    return true;
}

} // namespace

SqrtResolution resolve_sqrt_one_minus_sq(const RatFrac& g, const Rat& sample) {
    QPoly n = to_qpoly(g.num, "sqrt resolution"), d = to_qpoly(g.den, "sqrt resolution");
    QPoly e = d * d - n * n;
    if (e.is_zero()) throw DomainError("sqrt resolution: 1-g^2 vanishes identically");
    PolyFactorization f = factor_rational_poly(e);
    QPoly even = QPoly::constant(Rat(1));
    std::vector<QPoly> odd;
    for (const auto& [p, mult] : f.factors) {
        even = even * p.pow(static_cast<unsigned>(mult / 2));
        if (mult % 2 != 0) odd.push_back(p);
    }
    Rat c = f.constant;
    int w_exp = 0;
    if (!odd.empty()) {
        // the odd part must assemble into r^2 - 1 = -(1 - r^2)
        QPoly r2m1 = QPoly::from({Rat(-1), Rat(0), Rat(1)});
        QPoly prod = QPoly::constant(Rat(1));
        for (const auto& p : odd) prod = prod * p;
        if (prod != r2m1)
            throw DomainError("sqrt resolution: irrational remainder outside the w-closure");
        c = -c;
        w_exp = 1;
    }
    Rat s;
    if (!rat_square_root(c, s))
        throw DomainError("sqrt resolution: non-square constant part");
    auto lift_q = [](const QPoly& q) {
        SPoly out;
        out.c.reserve(q.c.size());
        for (const auto& v : q.c) out.c.push_back(QS3(v));
        out.trim();
        return out;
    };
    RatFrac sigma(lift_q(even).scale(QS3(s)), lift_q(d));
    // normalize positive at the sample point (w(sample) > 0 there)
    QS3 at = sigma.eval(sample);
    if (at.sign() == 0) throw DomainError("sqrt resolution: sample point is a zero");
    if (at.sign() < 0) sigma = -sigma;
    return {sigma, w_exp};
}

RatFuncW subst_ratfuncw(const RatFuncW& f, const RatFrac& g, const Rat& sample) {
    auto lift = [](const QS3& v) { return RatFrac::of(v); };
    RatFrac ag = f.A.eval_with(g, lift);
    RatFrac dg = f.D.eval_with(g, lift);
    RatFuncW out = RatFuncW::of_frac(ag);
    if (!f.B.is_zero()) {
        RatFrac bg = f.B.eval_with(g, lift);
        SqrtResolution res = resolve_sqrt_one_minus_sq(g, sample);
        RatFuncW wpart = RatFuncW::of_frac(bg * res.sigma);
        if (res.w_exp == 1) wpart = wpart * RatFuncW::w();
        out = out + wpart;
    }
    return out / RatFuncW::of_frac(dg);
}

} // namespace cf
