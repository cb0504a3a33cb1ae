#include "cycleforge/symexpr.hpp"

#include "cycleforge/specials.hpp"

#include <algorithm>

namespace cf {

namespace {

QPoly spoly_to_qpoly(const SPoly& p, const char* what) {
    QPoly out;
    out.c.reserve(p.c.size());
    for (const auto& v : p.c) {
        if (!v.is_rational()) throw DomainError(std::string(what) + ": sqrt(3) coefficient");
        out.c.push_back(v.a);
    }
    out.trim();
    return out;
}

SPoly qpoly_to_spoly(const QPoly& p) {
    SPoly out;
    out.c.reserve(p.c.size());
    for (const auto& v : p.c) out.c.push_back(QS3(v));
    out.trim();
    return out;
}

// g as a jointly primitive integer pair with positive-lead denominator
void primitive_pair(const RatFrac& g, QPoly& n, QPoly& d) {
    QPoly nq = spoly_to_qpoly(g.num, "inner argument");
    QPoly dq = spoly_to_qpoly(g.den, "inner argument");
    Rat cn, cd;
    QPoly n0 = primitive_part(nq, cn);
    QPoly d0 = primitive_part(dq, cd);
    Rat q = cn / cd; // reduced by construction of Rat
    n = n0.scale(Rat(numerator(q)));
    d = d0.scale(Rat(denominator(q)));
}

std::string atom_identity(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Pi: return "pi";
        case Atom::Kind::LogInt: return "li:" + a.n.str();
        case Atom::Kind::LogPoly: return "lp:" + poly_key(a.poly);
        case Atom::Kind::PhiAngle:
            return "ph:" + rat_str(a.angle) + ":" + poly_key(a.gn) + "|" + poly_key(a.gd);
        case Atom::Kind::Phi00: return "p0:" + poly_key(a.gn) + "|" + poly_key(a.gd);
        case Atom::Kind::LogW: return "lw:" + poly_key(a.gn) + "|" + poly_key(a.gd);
    }
    throw DomainError("atom: bad kind");
}

std::string monomial_key(const std::vector<std::pair<Atom, int>>& atoms) {
    std::string k;
    for (const auto& [a, e] : atoms) {
        if (!k.empty()) k += ";";
        k += a.key + "^" + std::to_string(e);
    }
    return k;
}

void add_term(SymExpr& out, SymTerm t) {
    if (t.coef.is_zero()) return;
    std::string k = monomial_key(t.atoms);
    auto it = out.terms.find(k);
    if (it == out.terms.end()) {
        out.terms.emplace(std::move(k), std::move(t));
        return;
    }
    it->second.coef = it->second.coef + t.coef;
    if (it->second.coef.is_zero()) out.terms.erase(it);
}

std::vector<std::pair<Atom, int>> merge_monomials(const std::vector<std::pair<Atom, int>>& a,
                                                  const std::vector<std::pair<Atom, int>>& b) {
    std::vector<std::pair<Atom, int>> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first.key < b[j].first.key)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first.key < a[i].first.key) out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return out;
}

std::vector<std::pair<Int, int>> factor_int(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p < 1000000; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Atom make_inner_atom(Atom::Kind kind, const RatFrac& g, const Rat& sample, const Rat& lo,
                     const Rat& hi, const Rat& angle = Rat(0)) {
    Atom a;
    a.kind = kind;
    a.angle = angle;
    primitive_pair(g, a.gn, a.gd);
    a.sample = sample;
    a.lo = lo;
    a.hi = hi;
    a.key = atom_identity(a);
    return a;
}

QS3 angle_sin(const Rat& angle_over_pi) {
    if (angle_over_pi == Rat(1, 2)) return QS3(1);
    if (angle_over_pi == Rat(1, 3) || angle_over_pi == Rat(2, 3)) return QS3(Rat(0), Rat(1, 2));
    throw DomainError("unsupported exact angle");
}

QS3 angle_cos(const Rat& angle_over_pi) {
    if (angle_over_pi == Rat(1, 2)) return QS3(0);
    if (angle_over_pi == Rat(1, 3)) return QS3(Rat(1, 2));
    if (angle_over_pi == Rat(2, 3)) return QS3(Rat(-1, 2));
    throw DomainError("unsupported exact angle");
}

} // namespace

RatFrac Atom::inner() const {
    return RatFrac(qpoly_to_spoly(gn), qpoly_to_spoly(gd));
}

std::string Atom::str() const {
    auto inner_str = [&]() {
        QPoly one = QPoly::constant(Rat(1));
        std::string n = poly_str(gn, "r");
        if (gd == one) return n;
        if (gn.deg() > 0) n = "(" + n + ")";
        return n + "/(" + poly_str(gd, "r") + ")";
    };
    switch (kind) {
        case Kind::Pi: return "pi";
        case Kind::LogInt: return "log(" + n.str() + ")";
        case Kind::LogPoly: return "log(" + poly_str(poly, "r") + ")";
        case Kind::PhiAngle: {
            Int an = numerator(angle), ad = denominator(angle);
            std::string as = (an == 1 ? "pi" : an.str() + "*pi") + "/" + ad.str();
            return "phi(" + as + "; " + inner_str() + ")";
        }
        case Kind::Phi00: return "Phi00(" + inner_str() + ")";
        case Kind::LogW: return "lw(" + inner_str() + ")";
    }
    throw DomainError("atom: bad kind");
}

Big Atom::eval_big(const Big& r, unsigned phi00_digits) const {
    auto inner_val = [&]() {
        auto lift = [](const QS3& v) { return to_big(v); };
        return qpoly_to_spoly(gn).eval_with(r, lift) / qpoly_to_spoly(gd).eval_with(r, lift);
    };
    switch (kind) {
        case Kind::Pi: return big_pi();
        case Kind::LogInt: return log(to_big(n));
        case Kind::LogPoly: {
            Big v = qpoly_to_spoly(poly).eval_with(r, [](const QS3& q) { return to_big(q); });
            if (v <= 0) throw DomainError("log of nonpositive value");
            return log(v);
        }
        case Kind::PhiAngle: return phi_theta(inner_val(), to_big(angle) * big_pi());
        case Kind::Phi00:
            return special_phi00(inner_val(), pow(Big(10), -static_cast<int>(phi00_digits)));
        case Kind::LogW: {
            Big g = inner_val();
            return log(1 + sqrt(1 - g * g));
        }
    }
    throw DomainError("atom: bad kind");
}

SymExpr SymExpr::of(const RatFuncW& f) {
    SymExpr out;
    if (!f.is_zero()) out.terms.emplace("", SymTerm{{}, f});
    return out;
}

SymExpr SymExpr::atom_expr(Atom a, const RatFuncW& coef, int power) {
    SymExpr out;
    if (coef.is_zero() || power < 0) return out;
    if (power == 0) return of(coef);
    SymTerm t{{{std::move(a), power}}, coef};
    out.terms.emplace(monomial_key(t.atoms), std::move(t));
    return out;
}

bool SymExpr::is_ratfunc() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
}

RatFuncW SymExpr::ratfunc_part() const { return coef_of(""); }

RatFuncW SymExpr::coef_of(const std::string& monomial_key_) const {
    auto it = terms.find(monomial_key_);
    return it == terms.end() ? RatFuncW() : it->second.coef;
}

SymExpr SymExpr::operator-() const {
    SymExpr out = *this;
    for (auto& [k, t] : out.terms) t.coef = -t.coef;
    return out;
}

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
    SymExpr out = a;
    for (const auto& [k, t] : b.terms) add_term(out, t);
    return out;
}

SymExpr operator-(const SymExpr& a, const SymExpr& b) { return a + (-b); }

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr out;
    for (const auto& [ka, ta] : a.terms)
        for (const auto& [kb, tb] : b.terms)
            add_term(out, SymTerm{merge_monomials(ta.atoms, tb.atoms), ta.coef * tb.coef});
    return out;
}

SymExpr operator*(const SymExpr& a, const RatFuncW& c) {
    SymExpr out;
    if (c.is_zero()) return out;
    for (const auto& [k, t] : a.terms) add_term(out, SymTerm{t.atoms, t.coef * c});
    return out;
}

SymExpr operator/(const SymExpr& a, const RatFuncW& c) { return a * c.inv(); }

bool operator==(const SymExpr& a, const SymExpr& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto i = a.terms.begin();
    auto j = b.terms.begin();
    for (; i != a.terms.end(); ++i, ++j) {
        if (i->first != j->first || i->second.coef != j->second.coef) return false;
    }
    return true;
}

// --- normalizing constructors ---

SymExpr sym_pi() {
    Atom a;
    a.kind = Atom::Kind::Pi;
    a.key = atom_identity(a);
    return SymExpr::atom_expr(a, RatFuncW::of(QS3(1)));
}

SymExpr sym_log_int(const Int& n) {
    if (n <= 0) throw DomainError("log of nonpositive integer");
    SymExpr out;
    for (const auto& [p, e] : factor_int(n)) {
        Atom a;
        a.kind = Atom::Kind::LogInt;
        a.n = p;
        a.key = atom_identity(a);
        out = out + SymExpr::atom_expr(a, RatFuncW::of(QS3(e)));
    }
    return out;
}

SymExpr sym_log_rat(const Rat& q) {
    if (q <= 0) throw DomainError("log of nonpositive rational");
    return sym_log_int(numerator(q)) - sym_log_int(denominator(q));
}

SymExpr sym_log_poly(const QPoly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) throw DomainError("log of zero polynomial");
    PolyFactorization f = factor_log_arg(p, lo, hi);
    SymExpr out = sym_log_rat(f.constant);
    for (const auto& [q, mult] : f.factors) {
        if (q.deg() == 0) continue; // folded into the constant already
        Atom a;
        a.kind = Atom::Kind::LogPoly;
        a.poly = q;
        a.lo = lo;
        a.hi = hi;
        a.key = atom_identity(a);
        out = out + SymExpr::atom_expr(a, RatFuncW::of(QS3(mult)));
    }
    return out;
}

SymExpr sym_log_frac(const RatFrac& g, const Rat& lo, const Rat& hi) {
    if (g.is_zero()) throw DomainError("log of zero function");
    QPoly n = spoly_to_qpoly(g.num, "log argument");
    QPoly d = spoly_to_qpoly(g.den, "log argument");
    Rat mid = (lo + hi) / 2;
    Rat nv = n.eval(mid), dv = d.eval(mid);
    if (nv == 0 || dv == 0) throw DomainError("log argument vanishes at the domain midpoint");
    if ((nv < 0) != (dv < 0)) throw DomainError("log argument negative on the domain");
    if (nv < 0) {
        n = n.scale(Rat(-1));
        d = d.scale(Rat(-1));
    }
    return sym_log_poly(n, lo, hi) - sym_log_poly(d, lo, hi);
}

SymExpr sym_phi(const Rat& angle_over_pi, const RatFrac& g, const Rat& sample, const Rat& lo,
                const Rat& hi) {
    Rat a = angle_over_pi;
    while (a > 1) a -= 2;
    while (a < -1) a += 2;
    if (a == 0 || a == 1 || a == -1) return SymExpr(); // phi(., 0) = phi(., +-pi) = 0
    if (a < 0) return -sym_phi(-a, g, sample, lo, hi);
    if (g.is_zero()) return SymExpr();
    QS3 gs = g.eval(sample);
    if (gs.sign() == 0) throw DomainError("phi: inner argument vanishes at the sample point");
    if (gs.sign() < 0) return -sym_phi(Rat(1) - a, -g, sample, lo, hi);
    angle_sin(a); // validates the angle set
    return SymExpr::atom_expr(make_inner_atom(Atom::Kind::PhiAngle, g, sample, lo, hi, a),
                              RatFuncW::of(QS3(1)));
}

SymExpr sym_phi00(const RatFrac& g, const Rat& sample, const Rat& lo, const Rat& hi) {
    if (g.is_zero()) return SymExpr();
    QS3 gs = g.eval(sample);
    if (gs.sign() == 0) throw DomainError("Phi00: inner argument vanishes at the sample point");
    if (gs.sign() < 0) return -sym_phi00(-g, sample, lo, hi);
    return SymExpr::atom_expr(make_inner_atom(Atom::Kind::Phi00, g, sample, lo, hi),
                              RatFuncW::of(QS3(1)));
}

SymExpr sym_lw(const RatFrac& g, const Rat& sample, const Rat& lo, const Rat& hi) {
    if (g.is_zero()) return sym_log_int(2); // lw(0) = log 2
    QS3 gs = g.eval(sample);
    if (gs.sign() == 0) throw DomainError("lw: inner argument vanishes at the sample point");
    if (gs.sign() < 0) return sym_lw(-g, sample, lo, hi); // even function
    bool collapses = false;
    SqrtResolution res;
    try {
        res = resolve_sqrt_one_minus_sq(g, sample);
        collapses = (res.w_exp == 0);
    } catch (const DomainError&) {
        // sqrt(1-g^2) leaves the w-closure; keep the atom opaque
    }
    if (collapses) return sym_log_frac(RatFrac::of(QS3(1)) + res.sigma, lo, hi);
    return SymExpr::atom_expr(make_inner_atom(Atom::Kind::LogW, g, sample, lo, hi),
                              RatFuncW::of(QS3(1)));
}

SymExpr sym_L() {
    QPoly up = QPoly::from({Rat(1), Rat(1)});
    QPoly dn = QPoly::from({Rat(1), Rat(-1)});
    return sym_log_poly(dn) - sym_log_poly(up);
}

SymExpr sym_lambda00() { return sym_pi() * (sym_lw(RatFrac::var()) - sym_log_int(2)); }

SymExpr sym_lambda10() {
    QPoly one_minus_r2 = QPoly::from({Rat(1), Rat(0), Rat(-1)});
    SymExpr num = sym_pi() * sym_log_poly(one_minus_r2) - sym_lambda00();
    return num / RatFuncW::w();
}

SymExpr sym_lambda_const(const Rat& cos_a, const Rat& lo, const Rat& hi) {
    if (cos_a == 0) return SymExpr();
    return sym_log_poly(QPoly::from({Rat(1), cos_a}), lo, hi);
}

SymExpr sym_phi_id(const Rat& angle_over_pi) { return sym_phi(angle_over_pi, RatFrac::var()); }

// --- derivative ---

namespace {

SymExpr atom_derivative(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Pi:
        case Atom::Kind::LogInt: return SymExpr();
        case Atom::Kind::LogPoly:
            return SymExpr::of(RatFuncW(qpoly_to_spoly(a.poly.derivative()), SPoly(),
                                        qpoly_to_spoly(a.poly)));
        case Atom::Kind::PhiAngle: {
            RatFrac g = a.inner();
            RatFuncW G = RatFuncW::of_frac(g);
            RatFuncW Gp = RatFuncW::of_frac(g.derivative());
            RatFuncW one = RatFuncW::of(QS3(1));
            RatFuncW den = one - G * G;
            RatFuncW c1 = Gp * G / den;
            RatFuncW c2 =
                Gp * RatFuncW::of(angle_sin(a.angle)) /
                (den * (one + G * RatFuncW::of(angle_cos(a.angle))));
            return SymExpr::atom_expr(a, c1) + SymExpr::of(c2);
        }
        case Atom::Kind::Phi00: {
            RatFrac g = a.inner();
            RatFuncW G = RatFuncW::of_frac(g);
            RatFuncW Gp = RatFuncW::of_frac(g.derivative());
            RatFuncW one = RatFuncW::of(QS3(1));
            RatFuncW den = one - G * G;
            RatFuncW c1 = Gp * G / den;
            RatFuncW c2 = Gp / (G * den);
            RatFrac onef = RatFrac::of(QS3(1));
            SymExpr logs = sym_log_frac(onef + g, a.lo, a.hi) - sym_log_frac(onef - g, a.lo, a.hi);
            return SymExpr::atom_expr(a, c1) + logs * c2;
        }
        case Atom::Kind::LogW: {
            RatFrac g = a.inner();
            SqrtResolution res = resolve_sqrt_one_minus_sq(g, a.sample);
            RatFuncW t = RatFuncW::of_frac(res.sigma);
            if (res.w_exp == 1) t = t * RatFuncW::w();
            RatFuncW G = RatFuncW::of_frac(g);
            RatFuncW Gp = RatFuncW::of_frac(g.derivative());
            return SymExpr::of(-(G * Gp) / (t + t * t));
        }
    }
    throw DomainError("atom: bad kind");
}

} // namespace

SymExpr SymExpr::derivative() const {
    SymExpr out;
    for (const auto& [k, t] : terms) {
        add_term(out, SymTerm{t.atoms, t.coef.derivative()});
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            SymTerm rest;
            rest.coef = t.coef * RatFuncW::of(QS3(t.atoms[i].second));
            for (std::size_t j = 0; j < t.atoms.size(); ++j) {
                int e = t.atoms[j].second - (j == i ? 1 : 0);
                if (e > 0) rest.atoms.emplace_back(t.atoms[j].first, e);
            }
            SymExpr rest_expr;
            rest_expr.terms.emplace(monomial_key(rest.atoms), rest);
            out = out + rest_expr * atom_derivative(t.atoms[i].first);
        }
    }
    return out;
}

Big SymExpr::eval_big(const Big& r, unsigned phi00_digits) const {
    Big acc(0);
    for (const auto& [k, t] : terms) {
        Big v = t.coef.eval_big(r);
        for (const auto& [a, e] : t.atoms) v *= pow(a.eval_big(r, phi00_digits), e);
        acc += v;
    }
    return acc;
}

// --- Taylor windows at r = 0 ---

namespace {

SymSeries lift_series(const SeriesQ& s, int) {
    SymSeries out;
    out.val = s.val;
    out.c.reserve(s.c.size());
    for (const auto& v : s.c) out.c.push_back(SymExpr(v));
    out.trim_front();
    return out;
}

SeriesQ log1p_series(int keep_to) {
    SeriesQ s;
    if (keep_to <= 1) return s;
    s.val = 1;
    s.c.assign(static_cast<std::size_t>(keep_to - 1), QS3(0));
    for (int k = 1; k < keep_to; ++k)
        s.c[static_cast<std::size_t>(k - 1)] = QS3(Rat((k % 2 == 1) ? 1 : -1, k));
    return s;
}

SeriesQ inner_series(const Atom& a, int ext) {
    SeriesQ gs = RatFuncW(qpoly_to_spoly(a.gn), SPoly(), qpoly_to_spoly(a.gd)).series(ext);
    if (!gs.is_zero() && gs.val < 1)
        throw DomainError("series: inner argument must vanish at r = 0");
    return gs;
}

SymSeries atom_series(const Atom& a, int ext) {
    switch (a.kind) {
        case Atom::Kind::Pi: return SymSeries::constant(sym_pi(), ext);
        case Atom::Kind::LogInt: return SymSeries::constant(sym_log_int(a.n), ext);
        case Atom::Kind::LogPoly: {
            Rat p0 = a.poly.coef(0);
            if (p0 <= 0) throw DomainError("series: log argument vanishes at r = 0");
            SeriesQ u;
            u.val = 0;
            u.c.assign(static_cast<std::size_t>(ext), QS3(0));
            for (std::size_t i = 0; i < a.poly.c.size() && i < u.c.size(); ++i)
                u.c[i] = QS3(a.poly.c[i] / p0);
            u.c[0] = u.c[0] - QS3(1);
            u.trim_front();
            SeriesQ v = log1p_series(ext).compose(u, ext);
            return lift_series(v, ext) + SymSeries::constant(sym_log_rat(p0), ext);
        }
        case Atom::Kind::PhiAngle: {
            QS3 sa = angle_sin(a.angle), ca = angle_cos(a.angle);
            SeriesQ base;
            base.val = 0;
            base.c.assign(static_cast<std::size_t>(ext), QS3(0));
            // c_{k+1} = (k c_{k-1} + sa (-ca)^k) / (k+1)
            QS3 mck(1); // (-ca)^k
            for (int k = 0; k + 1 < ext; ++k) {
                QS3 prev = (k >= 1) ? base.c[static_cast<std::size_t>(k - 1)] : QS3(0);
                base.c[static_cast<std::size_t>(k + 1)] = (QS3(k) * prev + sa * mck) / QS3(k + 1);
                mck = mck * (-ca);
            }
            base.trim_front();
            return lift_series(base.compose(inner_series(a, ext), ext), ext);
        }
        case Atom::Kind::Phi00: {
            SeriesQ base;
            base.val = 0;
            base.c.assign(static_cast<std::size_t>(ext), QS3(0));
            // d_k = ((k-1) d_{k-2} + 2[k odd]/k) / k
            for (int k = 1; k < ext; ++k) {
                QS3 prev = (k >= 2) ? base.c[static_cast<std::size_t>(k - 2)] : QS3(0);
                QS3 add = (k % 2 == 1) ? QS3(Rat(2, k)) : QS3(0);
                base.c[static_cast<std::size_t>(k)] = (QS3(k - 1) * prev + add) / QS3(k);
            }
            base.trim_front();
            return lift_series(base.compose(inner_series(a, ext), ext), ext);
        }
        case Atom::Kind::LogW: {
            SeriesQ gs = inner_series(a, ext);
            SeriesQ ws = w_series(ext).compose(gs, ext);
            SeriesQ u = (ws - SeriesQ::constant(QS3(1), ext)).scale(QS3(Rat(1, 2)));
            SeriesQ v = log1p_series(ext).compose(u, ext);
            return lift_series(v, ext) + SymSeries::constant(sym_log_int(2), ext);
        }
    }
    throw DomainError("atom: bad kind");
}

} // namespace

SymSeries SymExpr::series(int keep_to) const {
    SymSeries acc;
    for (const auto& [k, t] : terms) {
        SeriesQ cs = t.coef.series(keep_to);
        if (cs.is_zero()) continue;
        int ext = keep_to + (cs.val < 0 ? -cs.val : 0);
        if (ext != keep_to) cs = t.coef.series(ext);
        SymSeries part = lift_series(cs, ext);
        for (const auto& [a, e] : t.atoms) {
            SymSeries as = atom_series(a, ext);
            for (int p = 0; p < e; ++p) part = SymSeries::truncate_to(part * as, ext);
        }
        acc = acc + part;
    }
    return SymSeries::truncate_to(acc, keep_to);
}

std::string SymExpr::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [k, t] : terms) {
        if (!out.empty()) out += " + ";
        std::string c = t.coef.str();
        bool unit = (c == "1");
        bool needs_paren = c.find('+') != std::string::npos || c.find('-', 1) != std::string::npos;
        std::string piece;
        if (!unit || t.atoms.empty()) piece = needs_paren ? "(" + c + ")" : c;
        for (const auto& [a, e] : t.atoms) {
            if (!piece.empty()) piece += "*";
            piece += a.str();
            if (e > 1) piece += "^" + std::to_string(e);
        }
        out += piece;
    }
    return out;
}

SymExpr subst_symexpr(const SymExpr& f, const RatFrac& g, const Rat& sample, const Rat& lo,
                      const Rat& hi) {
    SymExpr out;
    for (const auto& [k, t] : f.terms) {
        SymExpr part = SymExpr::of(subst_ratfuncw(t.coef, g, sample));
        for (const auto& [a, e] : t.atoms) {
            SymExpr sub;
            switch (a.kind) {
                case Atom::Kind::Pi:
                case Atom::Kind::LogInt:
                    sub = SymExpr::atom_expr(a, RatFuncW::of(QS3(1)));
                    break;
                case Atom::Kind::LogPoly: {
                    auto lift = [](const QS3& v) { return RatFrac::of(v); };
                    RatFrac pg = qpoly_to_spoly(a.poly).eval_with(g, lift);
                    sub = sym_log_frac(pg, lo, hi);
                    break;
                }
                case Atom::Kind::PhiAngle:
                    sub = sym_phi(a.angle, a.inner().compose(g), sample, lo, hi);
                    break;
                case Atom::Kind::Phi00:
                    sub = sym_phi00(a.inner().compose(g), sample, lo, hi);
                    break;
                case Atom::Kind::LogW:
                    sub = sym_lw(a.inner().compose(g), sample, lo, hi);
                    break;
            }
            for (int p = 0; p < e; ++p) part = part * sub;
        }
        out = out + part;
    }
    return out;
}

} // namespace cf
