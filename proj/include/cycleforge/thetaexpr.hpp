#pragma once

#include "cycleforge/symexpr.hpp"

#include <map>

namespace cf {

// Angle-dependent extension of SymExpr used by the partial integrals
// over [alpha, alpha + theta]. A ThetaExpr is
//
//   free(r)  +  sum  coef(r) * T(k psi) / (1 + r cos psi)^l * weight
//
// with psi = theta + alpha, T in {sin, cos}, and weight one of
// 1, theta, lambda(r, psi) = log(1 + r cos psi), or phi(r, psi).
// The base angle alpha (a rational multiple of pi) is fixed per
// expression; arithmetic requires both operands to share it.
//
// The family is closed under d/dr: differentiating a pole or a weight
// multiplies the trig numerator by cos psi or sin psi, which folds back
// into harmonics k -> k +- 1 one pole order higher.

enum class ThetaWeight { One, Theta, Lambda, Phi };

struct ThetaTermKey {
    ThetaWeight weight;
    bool is_sin; // sin(k psi) vs cos(k psi)
    int k;       // harmonic, >= 0 (sin with k = 0 is dropped on insert)
    int l;       // pole order, >= 0

    friend bool operator<(const ThetaTermKey& a, const ThetaTermKey& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.is_sin != b.is_sin) return a.is_sin < b.is_sin;
        if (a.k != b.k) return a.k < b.k;
        return a.l < b.l;
    }
    friend bool operator==(const ThetaTermKey& a, const ThetaTermKey& b) {
        return a.weight == b.weight && a.is_sin == b.is_sin && a.k == b.k && a.l == b.l;
    }
};

class ThetaExpr {
  public:
    explicit ThetaExpr(const Rat& alpha_over_pi = Rat(0)) : alpha_(alpha_over_pi) {}
    static ThetaExpr of_sym(SymExpr s, const Rat& alpha_over_pi);

    const Rat& alpha_over_pi() const { return alpha_; }
    const SymExpr& free_part() const { return free_; }
    const std::map<ThetaTermKey, SymExpr>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty() && free_.is_zero(); }
    bool is_free() const { return terms_.empty(); }
    // no weighted factors and no free part: a plain trig/pole polynomial
    bool is_pure_trig() const;

    // Inserts one term, folding negative harmonics (sin(-k) = -sin(k),
    // cos(-k) = cos(k)) and dropping vanishing ones.
    void add_term(ThetaWeight w, bool is_sin, int k, int l, const SymExpr& coef);
    void add_free(const SymExpr& s) { free_ = free_ + s; }

    ThetaExpr operator-() const;
    friend ThetaExpr operator+(const ThetaExpr& a, const ThetaExpr& b);
    friend ThetaExpr operator-(const ThetaExpr& a, const ThetaExpr& b);
    // Product; throws DomainError when two weighted factors would meet
    // (the family is not closed under e.g. lambda * phi).
    friend ThetaExpr operator*(const ThetaExpr& a, const ThetaExpr& b);
    friend ThetaExpr operator*(const ThetaExpr& a, const SymExpr& c);
    friend ThetaExpr operator*(const ThetaExpr& a, const RatFuncW& c);
    friend ThetaExpr operator/(const ThetaExpr& a, const RatFuncW& c);
    friend bool operator==(const ThetaExpr& a, const ThetaExpr& b);

    ThetaExpr derivative_r() const;

    Big eval_big(const Big& r, const Big& theta, unsigned phi00_digits = 40) const;

    std::string str() const;

  private:
    Rat alpha_;
    SymExpr free_;
    std::map<ThetaTermKey, SymExpr> terms_;

    void require_same_alpha(const ThetaExpr& other) const;
    // adds coef * G(psi) * T(k psi) / pole^l * weight, G in {cos, sin}
    void add_trig_mult(bool g_is_sin, ThetaWeight w, bool is_sin, int k, int l,
                       const SymExpr& coef);
};

} // namespace cf
