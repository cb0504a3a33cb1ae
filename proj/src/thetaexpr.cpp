#include "cycleforge/thetaexpr.hpp"

#include "cycleforge/specials.hpp"

#include <sstream>

namespace cf {

ThetaExpr ThetaExpr::of_sym(SymExpr s, const Rat& alpha_over_pi) {
    ThetaExpr e(alpha_over_pi);
    e.free_ = std::move(s);
    return e;
}

bool ThetaExpr::is_pure_trig() const {
    if (!free_.is_zero()) return false;
    for (const auto& [key, coef] : terms_)
        if (key.weight != ThetaWeight::One) return false;
    return true;
}

void ThetaExpr::add_term(ThetaWeight w, bool is_sin, int k, int l, const SymExpr& coef) {
    if (coef.is_zero()) return;
    SymExpr c = coef;
    if (k < 0) {
        k = -k;
        if (is_sin) c = -c;
    }
    if (is_sin && k == 0) return;
    ThetaTermKey key{w, is_sin, k, l};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(c));
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

void ThetaExpr::require_same_alpha(const ThetaExpr& other) const {
    if (alpha_ != other.alpha_)
        throw DomainError("theta expressions have different base angles");
}

ThetaExpr ThetaExpr::operator-() const {
    ThetaExpr e(alpha_);
    e.free_ = -free_;
    for (const auto& [key, coef] : terms_) e.terms_.emplace(key, -coef);
    return e;
}

ThetaExpr operator+(const ThetaExpr& a, const ThetaExpr& b) {
    a.require_same_alpha(b);
    ThetaExpr e = a;
    e.free_ = e.free_ + b.free_;
    for (const auto& [key, coef] : b.terms_)
        e.add_term(key.weight, key.is_sin, key.k, key.l, coef);
    return e;
}

ThetaExpr operator-(const ThetaExpr& a, const ThetaExpr& b) { return a + (-b); }

ThetaExpr operator*(const ThetaExpr& a, const SymExpr& c) {
    ThetaExpr e(a.alpha_);
    e.free_ = a.free_ * c;
    for (const auto& [key, coef] : a.terms_)
        e.add_term(key.weight, key.is_sin, key.k, key.l, coef * c);
    return e;
}

ThetaExpr operator*(const ThetaExpr& a, const RatFuncW& c) { return a * SymExpr::of(c); }

ThetaExpr operator/(const ThetaExpr& a, const RatFuncW& c) { return a * SymExpr::of(c.inv()); }

ThetaExpr operator*(const ThetaExpr& a, const ThetaExpr& b) {
    a.require_same_alpha(b);
    ThetaExpr e(a.alpha_);
    e.free_ = a.free_ * b.free_;
    for (const auto& [key, coef] : b.terms_)
        e.add_term(key.weight, key.is_sin, key.k, key.l, coef * a.free_);
    for (const auto& [key, coef] : a.terms_)
        e.add_term(key.weight, key.is_sin, key.k, key.l, coef * b.free_);
    const SymExpr half{Rat(1, 2)};
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            ThetaWeight w;
            if (ka.weight == ThetaWeight::One) {
                w = kb.weight;
            } else if (kb.weight == ThetaWeight::One) {
                w = ka.weight;
            } else {
                throw DomainError("product of two weighted theta terms leaves the family");
            }
            SymExpr c = ca * cb * half;
            int l = ka.l + kb.l;
            // product-to-sum on the trig numerators
            if (!ka.is_sin && !kb.is_sin) {
                e.add_term(w, false, ka.k + kb.k, l, c);
                e.add_term(w, false, ka.k - kb.k, l, c);
            } else if (ka.is_sin && kb.is_sin) {
                e.add_term(w, false, ka.k - kb.k, l, c);
                e.add_term(w, false, ka.k + kb.k, l, -c);
            } else if (ka.is_sin) {
                e.add_term(w, true, ka.k + kb.k, l, c);
                e.add_term(w, true, ka.k - kb.k, l, c);
            } else {
                e.add_term(w, true, ka.k + kb.k, l, c);
                e.add_term(w, true, kb.k - ka.k, l, c);
            }
        }
    return e;
}

bool operator==(const ThetaExpr& a, const ThetaExpr& b) {
    return a.alpha_ == b.alpha_ && a.free_ == b.free_ && a.terms_ == b.terms_;
}

void ThetaExpr::add_trig_mult(bool g_is_sin, ThetaWeight w, bool is_sin, int k, int l,
                              const SymExpr& coef) {
    const SymExpr half = coef * SymExpr(Rat(1, 2));
    if (!g_is_sin) {
        // cos psi * T(k psi) = (T((k+1) psi) + T((k-1) psi)) / 2
        add_term(w, is_sin, k + 1, l, half);
        add_term(w, is_sin, k - 1, l, half);
    } else if (!is_sin) {
        // sin psi * cos(k psi) = (sin((k+1) psi) - sin((k-1) psi)) / 2
        add_term(w, true, k + 1, l, half);
        add_term(w, true, k - 1, l, -half);
    } else {
        // sin psi * sin(k psi) = (cos((k-1) psi) - cos((k+1) psi)) / 2
        add_term(w, false, k - 1, l, half);
        add_term(w, false, k + 1, l, -half);
    }
}

ThetaExpr ThetaExpr::derivative_r() const {
    ThetaExpr e(alpha_);
    e.free_ = free_.derivative();
    const SPoly r2m1 = SPoly::from({QS3(-1), QS3(0), QS3(1)}); // r^2 - 1
    const RatFuncW inv_1mr2 = RatFuncW(SPoly::constant(QS3(-1)), SPoly(), r2m1);
    const RatFuncW r_over_1mr2 = RatFuncW(SPoly::from({QS3(0), QS3(-1)}), SPoly(), r2m1);
    for (const auto& [key, coef] : terms_) {
        e.add_term(key.weight, key.is_sin, key.k, key.l, coef.derivative());
        if (key.l > 0) {
            // d/dr pole^-l = -l cos psi * pole^-(l+1)
            e.add_trig_mult(false, key.weight, key.is_sin, key.k, key.l + 1,
                            coef * SymExpr(Rat(-key.l)));
        }
        switch (key.weight) {
            case ThetaWeight::One:
            case ThetaWeight::Theta:
                break;
            case ThetaWeight::Lambda:
                // d/dr lambda = cos psi / (1 + r cos psi)
                e.add_trig_mult(false, ThetaWeight::One, key.is_sin, key.k, key.l + 1, coef);
                break;
            case ThetaWeight::Phi:
                // d/dr phi = r phi/(1-r^2) + sin psi/((1-r^2)(1+r cos psi))
                e.add_term(ThetaWeight::Phi, key.is_sin, key.k, key.l, coef * r_over_1mr2);
                e.add_trig_mult(true, ThetaWeight::One, key.is_sin, key.k, key.l + 1,
                                coef * inv_1mr2);
                break;
        }
    }
    return e;
}

Big ThetaExpr::eval_big(const Big& r, const Big& theta, unsigned phi00_digits) const {
    Big psi = theta + to_big(alpha_) * big_pi();
    Big pole = 1 + r * cos(psi);
    Big acc = free_.eval_big(r, phi00_digits);
    for (const auto& [key, coef] : terms_) {
        Big t = coef.eval_big(r, phi00_digits);
        t *= key.is_sin ? sin(Big(key.k * psi)) : cos(Big(key.k * psi));
        if (key.l > 0) t /= pow(pole, key.l);
        switch (key.weight) {
            case ThetaWeight::One: break;
            case ThetaWeight::Theta: t *= theta; break;
            case ThetaWeight::Lambda: t *= lambda_theta(r, psi); break;
            case ThetaWeight::Phi: t *= phi_theta(r, psi); break;
        }
        acc += t;
    }
    return acc;
}

std::string ThetaExpr::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (!free_.is_zero()) {
        os << free_.str();
        first = false;
    }
    for (const auto& [key, coef] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << coef.str() << ")*";
        os << (key.is_sin ? "sin(" : "cos(") << key.k << "p)";
        if (key.l > 0) {
            os << "/(1+r*cos(p))";
            if (key.l > 1) os << "^" << key.l;
        }
        switch (key.weight) {
            case ThetaWeight::One: break;
            case ThetaWeight::Theta: os << "*theta"; break;
            case ThetaWeight::Lambda: os << "*lam(p)"; break;
            case ThetaWeight::Phi: os << "*phi(p)"; break;
        }
    }
    return os.str();
}

} // namespace cf
