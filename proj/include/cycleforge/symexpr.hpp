#pragma once

#include "cycleforge/ratfuncw.hpp"

#include <map>
#include <string>
#include <vector>

namespace cf {

// Transcendental atoms over the field of RatFuncW coefficients. Each
// atom is a function of r on a fixed open domain (default (0,1)):
//   Pi        the constant pi
//   LogInt    log n for an integer n >= 2 (prime after factoring)
//   LogPoly   log p(r), p primitive integer poly, positive on the domain
//   PhiAngle  phi(g(r), a) for a = angle*pi, angle in {1/3, 1/2, 2/3}
//   Phi00     Phi00(g(r)), the integral of phi(g, .) over [0, pi]
//   LogW      lw(g(r)) = log(1 + sqrt(1 - g(r)^2))
// Inner arguments g are rational functions stored as jointly primitive
// integer polynomial pairs, normalized positive at the sample point.
struct Atom {
    enum class Kind { Pi, LogInt, LogPoly, PhiAngle, Phi00, LogW };
    Kind kind = Kind::Pi;
    Int n = 0;       // LogInt
    QPoly poly;      // LogPoly
    Rat angle;       // PhiAngle: angle/pi
    QPoly gn, gd;    // PhiAngle, Phi00, LogW inner g = gn/gd
    Rat sample;      // domain sample used for sign normalization
    Rat lo, hi;      // working domain, for derivative log factoring
    std::string key; // canonical identity, excludes sample and domain

    bool operator<(const Atom& o) const { return key < o.key; }
    bool operator==(const Atom& o) const { return key == o.key; }
    std::string str() const;

    RatFrac inner() const; // g as a RatFrac (PhiAngle, Phi00, LogW)
    Big eval_big(const Big& r, unsigned phi00_digits) const;
};

// A product of atom powers times a RatFuncW coefficient.
struct SymTerm {
    std::vector<std::pair<Atom, int>> atoms; // sorted by key, exponents >= 1
    RatFuncW coef;
};

struct SymExpr;
using SymSeries = LaurentSeries<SymExpr>;

// Canonical sum of SymTerms keyed by their atom monomial. Equality is
// structural; all arithmetic renormalizes.
struct SymExpr {
    std::map<std::string, SymTerm> terms; // empty = zero

    SymExpr() = default;
    SymExpr(long v) { *this = of(RatFuncW::of(QS3(v))); }
    SymExpr(const Rat& v) { *this = of(RatFuncW::of_rat(v)); }
    explicit SymExpr(const QS3& v) { *this = of(RatFuncW::of(v)); }

    static SymExpr of(const RatFuncW& f);
    static SymExpr var() { return of(RatFuncW::var()); }
    static SymExpr w() { return of(RatFuncW::w()); }
    static SymExpr atom_expr(Atom a, const RatFuncW& coef, int power = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_ratfunc() const; // no transcendental monomials
    RatFuncW ratfunc_part() const;
    // coefficient of a given atom monomial key ("" = the rational part)
    RatFuncW coef_of(const std::string& monomial_key) const;

    SymExpr operator-() const;
    friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
    friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
    friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
    friend SymExpr operator*(const SymExpr& a, const RatFuncW& c);
    friend SymExpr operator*(const RatFuncW& c, const SymExpr& a) { return a * c; }
    friend SymExpr operator/(const SymExpr& a, const RatFuncW& c);
    friend bool operator==(const SymExpr& a, const SymExpr& b);
    friend bool operator!=(const SymExpr& a, const SymExpr& b) { return !(a == b); }

    // exact d/dr via the atom closure rules; throws DomainError for a
    // LogW atom whose sqrt(1-g^2) leaves the w-closure
    SymExpr derivative() const;
    Big eval_big(const Big& r, unsigned phi00_digits = 40) const;
    // Taylor window at r = 0 with coefficients that are constant
    // SymExprs; orders < keep_to are reliable
    SymSeries series(int keep_to) const;
    std::string str() const;
};

// Normalizing constructors. Domain endpoints bound sign checks of log
// arguments; `sample` fixes orientation of the kernel atoms.
SymExpr sym_pi();
SymExpr sym_log_int(const Int& n);                  // n >= 1
SymExpr sym_log_rat(const Rat& q);                  // q > 0
SymExpr sym_log_poly(const QPoly& p, const Rat& lo = Rat(0), const Rat& hi = Rat(1));
SymExpr sym_log_frac(const RatFrac& g, const Rat& lo = Rat(0), const Rat& hi = Rat(1));
SymExpr sym_phi(const Rat& angle_over_pi, const RatFrac& g, const Rat& sample = Rat(1, 2),
                const Rat& lo = Rat(0), const Rat& hi = Rat(1));
SymExpr sym_phi00(const RatFrac& g, const Rat& sample = Rat(1, 2),
                  const Rat& lo = Rat(0), const Rat& hi = Rat(1));
SymExpr sym_lw(const RatFrac& g, const Rat& sample = Rat(1, 2),
               const Rat& lo = Rat(0), const Rat& hi = Rat(1));

// Named closed forms on the default domain.
SymExpr sym_L();         // log((1-r)/(1+r))
SymExpr sym_lambda00();  // pi (lw(r) - log 2)
SymExpr sym_lambda10();  // (pi log(1-r^2) - lambda00) / w
SymExpr sym_lambda_const(const Rat& cos_a, const Rat& lo = Rat(0), const Rat& hi = Rat(1));
SymExpr sym_phi_id(const Rat& angle_over_pi); // phi(r, angle*pi) with identity inner

// Substitute r -> g(r): coefficients through the w-closure, atoms by
// inner composition; renormalizes on the new domain.
SymExpr subst_symexpr(const SymExpr& f, const RatFrac& g, const Rat& sample = Rat(1, 2),
                      const Rat& lo = Rat(0), const Rat& hi = Rat(1));

} // namespace cf
