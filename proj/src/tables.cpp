#include "cycleforge/tables.hpp"

#include "cycleforge/quadrature.hpp"
#include "cycleforge/specials.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace cf {

namespace {

// twelfths of pi; entry m holds the value at m pi / 6
const Rat kHalf(1, 2);
QS3 twelfth_cos(long m) {
    static const QS3 tab[12] = {
        QS3(1),          QS3(Rat(0), kHalf),  QS3(kHalf),  QS3(0),
        QS3(-kHalf),     QS3(Rat(0), -kHalf), QS3(-1),     QS3(Rat(0), -kHalf),
        QS3(-kHalf),     QS3(0),              QS3(kHalf),  QS3(Rat(0), kHalf),
    };
    return tab[m];
}

long angle_twelfths(const Rat& q) {
    Rat s = q * 6;
    if (denominator(s) != 1) throw DomainError("angle is not a multiple of pi/6");
    Int m = numerator(s) % 12;
    if (m < 0) m += 12;
    return static_cast<long>(m);
}

} // namespace

QS3 cos_pi(const Rat& q) { return twelfth_cos(angle_twelfths(q)); }
QS3 sin_pi(const Rat& q) { return twelfth_cos(((angle_twelfths(q) % 12) + 9) % 12); }

bool family_is_partial(Family f) {
    return f == Family::PartialSin || f == Family::PartialCos;
}

bool family_is_weighted(Family f) {
    switch (f) {
        case Family::SinLambda:
        case Family::CosLambda:
        case Family::SinPhi:
        case Family::CosPhi:
        case Family::SinTheta:
        case Family::CosTheta:
            return true;
        default:
            return false;
    }
}

std::string family_name(Family f) {
    switch (f) {
        case Family::PartialSin: return "S";
        case Family::PartialCos: return "C";
        case Family::Sin: return "s";
        case Family::Cos: return "c";
        case Family::SinLambda: return "s^lambda";
        case Family::CosLambda: return "c^lambda";
        case Family::SinPhi: return "s^phi";
        case Family::CosPhi: return "c^phi";
        case Family::SinTheta: return "s^theta";
        case Family::CosTheta: return "c^theta";
    }
    throw DomainError("unknown family");
}

Family family_from_name(const std::string& name) {
    static const std::map<std::string, Family> tab = {
        {"S", Family::PartialSin},      {"C", Family::PartialCos},
        {"s", Family::Sin},             {"c", Family::Cos},
        {"s^lambda", Family::SinLambda}, {"c^lambda", Family::CosLambda},
        {"s^phi", Family::SinPhi},       {"c^phi", Family::CosPhi},
        {"s^theta", Family::SinTheta},   {"c^theta", Family::CosTheta},
        {"sl", Family::SinLambda},       {"cl", Family::CosLambda},
        {"sp", Family::SinPhi},          {"cp", Family::CosPhi},
        {"st", Family::SinTheta},        {"ct", Family::CosTheta},
    };
    auto it = tab.find(name);
    if (it == tab.end()) throw DomainError("unknown family name: " + name);
    return it->second;
}

namespace {

bool is_exact_alpha(const Rat& q) { return q == 0 || q == Rat(-1, 3) || q == Rat(-1, 2); }

void check_key(const IntegralKey& key, bool symbolic) {
    if (key.k < 0 || key.l < 0) throw DomainError("harmonic and pole order must be nonnegative");
    if (key.k > 64 || key.l > 64) throw DomainError("table index out of the supported range");
    if (family_is_weighted(key.family) && key.alpha_over_pi != 0)
        throw DomainError("weighted families are defined at alpha = 0 only");
    if (symbolic && !is_exact_alpha(key.alpha_over_pi))
        throw DomainError("symbolic mode supports alpha in {0, -pi/3, -pi/2} only");
}

// ---- small expression builders -------------------------------------------

SPoly sp_c(const Rat& v) { return SPoly::constant(QS3(v)); }
SPoly sp_lin(const Rat& c0, const Rat& c1) { return SPoly::from({QS3(c0), QS3(c1)}); }
SPoly sp_1mr2() { return SPoly::from({QS3(1), QS3(0), QS3(-1)}); }

RatFuncW rw_of(SPoly num, SPoly den) { return RatFuncW(std::move(num), SPoly(), std::move(den)); }
RatFuncW rw_inv_r(const Rat& scale) { return rw_of(sp_c(scale), sp_lin(0, 1)); }
// scale * r
RatFuncW rw_scaled_r(const Rat& scale) { return rw_of(sp_lin(0, scale), sp_c(1)); }
// 1 / sqrt(1-r^2) = w / (1-r^2)
RatFuncW rw_inv_w() { return RatFuncW(SPoly(), sp_c(1), sp_1mr2()); }

SymExpr lam_const(const Rat& cos_a) {
    if (cos_a == 0) return SymExpr(0);
    return sym_lambda_const(cos_a, Rat(-1), Rat(1));
}

SymExpr phi_const(const Rat& q) {
    return sym_phi(q, RatFrac::var(), Rat(1, 2), Rat(-1), Rat(1));
}

// ---- memoized entries ----------------------------------------------------

using CacheKey = std::tuple<int, int, int, Rat>;
std::map<CacheKey, TableEntry> g_complete;
std::map<CacheKey, PartialEntry> g_partial;
std::recursive_mutex g_cache_mutex;

const TableEntry& complete_entry(Family f, int k, int l, const Rat& q);
const PartialEntry& partial_entry(Family f, int k, int l, const Rat& q);

const SymExpr& cval(Family f, int k, int l, const Rat& q) {
    return complete_entry(f, k, l, q).value;
}

SymExpr two_step(Family f, int k, int l, const Rat& q) {
    SymExpr head = (cval(f, k - 1, l - 1, q) - cval(f, k - 1, l, q)) * rw_inv_r(2);
    return head - cval(f, k - 2, l, q);
}

// s^a_{k,l}
SymExpr build_sin(int k, int l, const Rat& q) {
    if (k == 0) return SymExpr(0);
    if (l == 0) {
        Rat f = (k % 2 != 0) ? Rat(2, k) : Rat(0);
        return SymExpr(QS3(f) * cos_pi(Rat(k) * q));
    }
    const Rat cA = cos_pi(q).a;
    if (k == 1 && l == 1) return (lam_const(cA) - lam_const(-cA)) * rw_inv_r(1);
    if (k == 1) {
        // ((1+r cos a)^{1-l} - (1-r cos a)^{1-l}) / (r (1-l))
        SPoly p1 = sp_lin(1, cA).pow(static_cast<unsigned>(l - 1));
        SPoly p2 = sp_lin(1, -cA).pow(static_cast<unsigned>(l - 1));
        RatFrac diff = RatFrac(sp_c(1), p1) - RatFrac(sp_c(1), p2);
        RatFrac den(sp_lin(0, Rat(1 - l)), sp_c(1));
        return SymExpr::of(RatFuncW::of_frac(diff / den));
    }
    return two_step(Family::Sin, k, l, q);
}

// c^a_{k,l}
SymExpr build_cos(int k, int l, const Rat& q) {
    if (k == 0 && l == 0) return sym_pi();
    if (k == 0 && l == 1) return phi_const(q) - phi_const(q + 1) + sym_pi() * rw_inv_w();
    if (k == 0) {
        const SymExpr& prev = cval(Family::Cos, 0, l - 1, q);
        return prev + prev.derivative() * rw_scaled_r(Rat(1, l - 1));
    }
    if (l == 0) {
        Rat f = (k % 2 != 0) ? Rat(-2, k) : Rat(0);
        return SymExpr(QS3(f) * sin_pi(Rat(k) * q));
    }
    if (k == 1) return (cval(Family::Cos, 0, l - 1, q) - cval(Family::Cos, 0, l, q)) * rw_inv_r(1);
    return two_step(Family::Cos, k, l, q);
}

// s^lambda_{k,l}, alpha = 0
SymExpr build_sin_lambda(int k, int l) {
    if (k == 0) return SymExpr(0);
    const SymExpr lam_p = lam_const(1);  // log(1+r)
    const SymExpr lam_m = lam_const(-1); // log(1-r)
    if (l == 0) {
        SymExpr head = (k % 2 != 0) ? (lam_p + lam_m) : (lam_p - lam_m);
        head = head * SymExpr(Rat(1, k));
        SymExpr tail = (cval(Family::Sin, k - 1, 1, 0) - cval(Family::Sin, k + 1, 1, 0)) *
                       rw_scaled_r(Rat(1, 2 * k));
        return head + tail;
    }
    if (k == 1 && l == 1)
        return (lam_p * lam_p - lam_m * lam_m) * rw_of(sp_c(1), sp_lin(0, 2));
    if (k == 1) {
        const Rat inv = Rat(1, l - 1);
        SPoly p_m = sp_lin(1, -1).pow(static_cast<unsigned>(l - 1)); // (1-r)^{l-1}
        SPoly p_p = sp_lin(1, 1).pow(static_cast<unsigned>(l - 1));  // (1+r)^{l-1}
        SymExpr head = (lam_m + SymExpr(inv)) * rw_of(sp_c(1), p_m) -
                       (lam_p + SymExpr(inv)) * rw_of(sp_c(1), p_p);
        return head * rw_inv_r(inv);
    }
    return two_step(Family::SinLambda, k, l, Rat(0));
}

// c^lambda_{k,l}, alpha = 0
SymExpr build_cos_lambda(int k, int l) {
    if (k == 0 && l == 0) return sym_lambda00();
    if (k == 0 && l == 1) return sym_lambda10();
    if (k == 0) {
        const SymExpr& prev = cval(Family::CosLambda, 0, l - 1, Rat(0));
        return (prev.derivative() - cval(Family::Cos, 1, l, 0)) * rw_scaled_r(Rat(1, l - 1)) +
               prev;
    }
    if (l == 0)
        return (cval(Family::Cos, k - 1, 1, 0) - cval(Family::Cos, k + 1, 1, 0)) *
               rw_scaled_r(Rat(1, 2 * k));
    if (k == 1)
        return (cval(Family::CosLambda, 0, l - 1, 0) - cval(Family::CosLambda, 0, l, 0)) *
               rw_inv_r(1);
    return two_step(Family::CosLambda, k, l, Rat(0));
}

// s^phi_{k,l}, alpha = 0
SymExpr build_sin_phi(int k, int l) {
    if (k == 0) return SymExpr(0);
    if (l == 0) return cval(Family::Cos, k, 1, 0) * SymExpr(Rat(-1, k));
    if (k == 1 && l == 1) {
        // Lambda00 / (r w) - Lambda10 / r
        RatFuncW inv_rw(SPoly(), sp_c(1), SPoly::from({QS3(0), QS3(1), QS3(0), QS3(-1)}));
        return sym_lambda00() * inv_rw - sym_lambda10() * rw_inv_r(1);
    }
    if (k == 1)
        return (cval(Family::Cos, 0, l, 0) - cval(Family::Cos, 0, l - 1, 0) * rw_inv_w()) *
               rw_inv_r(Rat(1, l - 1));
    return two_step(Family::SinPhi, k, l, Rat(0));
}

// c^phi_{k,l}, alpha = 0
SymExpr build_cos_phi(int k, int l) {
    if (k == 0 && l == 0) return sym_phi00(RatFrac::var(), Rat(1, 2), Rat(-1), Rat(1));
    if (k == 0 && l == 1)
        return cval(Family::CosTheta, 0, 1, 0) * rw_inv_w() -
               sym_pi() * sym_pi() * rw_of(sp_c(1), SPoly::from({QS3(2), QS3(0), QS3(-2)}));
    if (k == 0) {
        const SymExpr& prev = cval(Family::CosPhi, 0, l - 1, Rat(0));
        SymExpr head = (prev.derivative() -
                        cval(Family::Sin, 1, l, 0) * rw_of(sp_c(1), sp_1mr2())) *
                       rw_scaled_r(Rat(1, l - 1));
        // (l (1-r^2) - 1) / ((l-1)(1-r^2))
        SPoly num = SPoly::from({QS3(Rat(l - 1)), QS3(0), QS3(Rat(-l))});
        SPoly den = SPoly::from({QS3(Rat(l - 1)), QS3(0), QS3(Rat(1 - l))});
        return head + prev * rw_of(std::move(num), std::move(den));
    }
    if (l == 0) {
        SymExpr head = cval(Family::Sin, k, 1, 0) * SymExpr(Rat(1, k));
        if (k % 2 != 0)
            head = head + SymExpr::of(rw_inv_w() * RatFuncW::of_rat(Rat(-2, static_cast<long>(k) * k)));
        return head;
    }
    if (k == 1)
        return (cval(Family::CosPhi, 0, l - 1, 0) - cval(Family::CosPhi, 0, l, 0)) * rw_inv_r(1);
    return two_step(Family::CosPhi, k, l, Rat(0));
}

// s^theta_{k,l}, alpha = 0
SymExpr build_sin_theta(int k, int l) {
    if (k == 0) return SymExpr(0);
    if (l == 0) return sym_pi() * SymExpr(Rat(k % 2 != 0 ? 1 : -1, k));
    if (k == 1 && l == 1)
        return (sym_lambda00() - sym_pi() * lam_const(-1)) * rw_inv_r(1);
    if (k == 1) {
        SPoly p_m = sp_lin(1, -1).pow(static_cast<unsigned>(l - 1));
        return (sym_pi() * rw_of(sp_c(1), p_m) - cval(Family::Cos, 0, l - 1, 0)) *
               rw_inv_r(Rat(1, l - 1));
    }
    return two_step(Family::SinTheta, k, l, Rat(0));
}

// c^theta_{k,l}, alpha = 0
SymExpr build_cos_theta(int k, int l) {
    if (k == 0 && l == 0) return sym_pi() * sym_pi() * SymExpr(Rat(1, 2));
    if (k == 0 && l == 1)
        return sym_phi00(RatFrac::var(), Rat(1, 2), Rat(-1), Rat(1)) +
               sym_pi() * sym_pi() * RatFuncW(SPoly(), sp_c(1), SPoly::from({QS3(2), QS3(0), QS3(-2)}));
    if (k == 0) {
        const SymExpr& prev = cval(Family::CosTheta, 0, l - 1, Rat(0));
        return prev + prev.derivative() * rw_scaled_r(Rat(1, l - 1));
    }
    if (l == 0)
        return SymExpr(k % 2 != 0 ? Rat(-2, static_cast<long>(k) * k) : Rat(0));
    if (k == 1)
        return (cval(Family::CosTheta, 0, l - 1, 0) - cval(Family::CosTheta, 0, l, 0)) *
               rw_inv_r(1);
    return two_step(Family::CosTheta, k, l, Rat(0));
}

SymExpr build_at_zero(Family f, int k, int l, const Rat& q) {
    (void)l;
    switch (f) {
        case Family::Sin:
            return build_sin(k, 0, q);
        case Family::Cos:
            if (k == 0) return sym_pi();
            return build_cos(k, 0, q);
        case Family::SinLambda:
        case Family::CosLambda:
        case Family::SinPhi:
        case Family::CosPhi:
            return SymExpr(0);
        case Family::SinTheta:
            if (k == 0) return SymExpr(0);
            return sym_pi() * SymExpr(Rat(k % 2 != 0 ? 1 : -1, k));
        case Family::CosTheta:
            if (k == 0) return sym_pi() * sym_pi() * SymExpr(Rat(1, 2));
            return SymExpr(k % 2 != 0 ? Rat(-2, static_cast<long>(k) * k) : Rat(0));
        default:
            throw DomainError("not a complete family");
    }
}

const TableEntry& complete_entry(Family f, int k, int l, const Rat& q) {
    std::lock_guard<std::recursive_mutex> guard(g_cache_mutex);
    CacheKey ck{static_cast<int>(f), k, l, q};
    auto it = g_complete.find(ck);
    if (it != g_complete.end()) return it->second;
    TableEntry entry;
    switch (f) {
        case Family::Sin: entry.value = build_sin(k, l, q); break;
        case Family::Cos: entry.value = build_cos(k, l, q); break;
        case Family::SinLambda: entry.value = build_sin_lambda(k, l); break;
        case Family::CosLambda: entry.value = build_cos_lambda(k, l); break;
        case Family::SinPhi: entry.value = build_sin_phi(k, l); break;
        case Family::CosPhi: entry.value = build_cos_phi(k, l); break;
        case Family::SinTheta: entry.value = build_sin_theta(k, l); break;
        case Family::CosTheta: entry.value = build_cos_theta(k, l); break;
        default: throw DomainError("not a complete family");
    }
    entry.at_zero = build_at_zero(f, k, l, q);
    return g_complete.emplace(std::move(ck), std::move(entry)).first->second;
}

ThetaExpr partial_two_step(Family f, int k, int l, const Rat& q) {
    const ThetaExpr& a = partial_entry(f, k - 1, l - 1, q).value;
    const ThetaExpr& b = partial_entry(f, k - 1, l, q).value;
    const ThetaExpr& c = partial_entry(f, k - 2, l, q).value;
    return (a - b) * rw_inv_r(2) - c;
}

// S^a_{k,l}(r, theta)
ThetaExpr build_partial_sin(int k, int l, const Rat& q) {
    ThetaExpr e(q);
    if (k == 0) return e;
    if (l == 0) {
        e.add_free(SymExpr(QS3(Rat(1, k)) * cos_pi(Rat(k) * q)));
        e.add_term(ThetaWeight::One, false, k, 0, SymExpr(Rat(-1, k)));
        return e;
    }
    const Rat cA = cos_pi(q).a;
    if (k == 1 && l == 1) {
        e.add_free(lam_const(cA) * rw_inv_r(1));
        e.add_term(ThetaWeight::Lambda, false, 0, 0, SymExpr::of(rw_inv_r(-1)));
        return e;
    }
    if (k == 1) {
        const Rat inv = Rat(1, l - 1);
        SPoly p1 = sp_lin(1, cA).pow(static_cast<unsigned>(l - 1));
        e.add_term(ThetaWeight::One, false, 0, l - 1, SymExpr::of(rw_inv_r(inv)));
        e.add_free(SymExpr::of(rw_of(sp_c(-inv), p1 * sp_lin(0, 1))));
        return e;
    }
    return partial_two_step(Family::PartialSin, k, l, q);
}

// C^a_{k,l}(r, theta)
ThetaExpr build_partial_cos(int k, int l, const Rat& q) {
    ThetaExpr e(q);
    if (k == 0 && l == 0) {
        e.add_term(ThetaWeight::Theta, false, 0, 0, SymExpr(1));
        return e;
    }
    if (l == 0) {
        e.add_free(SymExpr(QS3(Rat(-1, k)) * sin_pi(Rat(k) * q)));
        e.add_term(ThetaWeight::One, true, k, 0, SymExpr(Rat(1, k)));
        return e;
    }
    if (k == 0 && l == 1) {
        e.add_free(phi_const(q));
        e.add_term(ThetaWeight::Phi, false, 0, 0, SymExpr(-1));
        e.add_term(ThetaWeight::Theta, false, 0, 0, SymExpr::of(rw_inv_w()));
        return e;
    }
    if (k == 0) {
        const ThetaExpr& prev = partial_entry(Family::PartialCos, 0, l - 1, q).value;
        return prev + prev.derivative_r() * rw_scaled_r(Rat(1, l - 1));
    }
    if (k == 1) {
        return (partial_entry(Family::PartialCos, 0, l - 1, q).value -
                partial_entry(Family::PartialCos, 0, l, q).value) *
               rw_inv_r(1);
    }
    return partial_two_step(Family::PartialCos, k, l, q);
}

const PartialEntry& partial_entry(Family f, int k, int l, const Rat& q) {
    std::lock_guard<std::recursive_mutex> guard(g_cache_mutex);
    CacheKey ck{static_cast<int>(f), k, l, q};
    auto it = g_partial.find(ck);
    if (it != g_partial.end()) return it->second;
    PartialEntry entry;
    entry.value = (f == Family::PartialSin) ? build_partial_sin(k, l, q)
                                            : build_partial_cos(k, l, q);
    // the r -> 0 limit is the pole-free closed form
    if (l == 0) {
        entry.at_zero = entry.value;
    } else if (f == Family::PartialSin && k == 0) {
        entry.at_zero = ThetaExpr(q);
    } else {
        entry.at_zero = partial_entry(f, k, 0, q).value;
    }
    return g_partial.emplace(std::move(ck), std::move(entry)).first->second;
}

// defining integral, quadrature fallback for non-exact base angles
Big quad_defining(const IntegralKey& key, const Big& r, const Big& span, const Big& tol) {
    bool is_sin = key.family == Family::PartialSin || key.family == Family::Sin;
    int k = key.k, l = key.l;
    auto f = [&](const Big& psi) {
        Big t = is_sin ? sin(Big(k * psi)) : cos(Big(k * psi));
        if (l > 0) t /= pow(Big(1 + r * cos(psi)), l);
        return t;
    };
    Big lo = to_big(key.alpha_over_pi) * big_pi();
    return integrate(f, lo, Big(lo + span), tol);
}

} // namespace

const TableEntry& table_eval(const IntegralKey& key) {
    check_key(key, true);
    if (family_is_partial(key.family))
        throw DomainError("S and C are theta-dependent; use table_eval_partial");
    return complete_entry(key.family, key.k, key.l, key.alpha_over_pi);
}

const PartialEntry& table_eval_partial(const IntegralKey& key) {
    check_key(key, true);
    if (!family_is_partial(key.family))
        throw DomainError("table_eval_partial expects family S or C");
    return partial_entry(key.family, key.k, key.l, key.alpha_over_pi);
}

Big table_eval_numeric(const IntegralKey& key, const Big& r, unsigned digits) {
    if (family_is_partial(key.family))
        throw DomainError("partial families need the theta overload");
    if (digits < 1) throw DomainError("precision must be positive");
    if (!(abs(r) < 1)) throw DomainError("amplitude must satisfy |r| < 1");
    check_key(key, false);
    PrecisionGuard guard(digits + 15);
    Big out;
    if (is_exact_alpha(key.alpha_over_pi)) {
        const TableEntry& entry = table_eval(key);
        out = (r == 0) ? entry.at_zero.eval_big(Big(0), digits + 10)
                       : entry.value.eval_big(r, digits + 10);
    } else {
        out = quad_defining(key, r, big_pi(), pow(Big(10), -static_cast<int>(digits) - 5));
    }
    out.precision(digits);
    return out;
}

Big table_eval_numeric(const IntegralKey& key, const Big& r, const Big& theta, unsigned digits) {
    if (!family_is_partial(key.family))
        throw DomainError("complete families take no theta argument");
    if (digits < 1) throw DomainError("precision must be positive");
    if (!(abs(r) < 1)) throw DomainError("amplitude must satisfy |r| < 1");
    check_key(key, false);
    PrecisionGuard guard(digits + 15);
    Big out;
    if (is_exact_alpha(key.alpha_over_pi)) {
        const PartialEntry& entry = table_eval_partial(key);
        out = (r == 0) ? entry.at_zero.eval_big(Big(0), theta, digits + 10)
                       : entry.value.eval_big(r, theta, digits + 10);
    } else {
        out = quad_defining(key, r, theta, pow(Big(10), -static_cast<int>(digits) - 5));
    }
    out.precision(digits);
    return out;
}

SymExpr integrate_full(const ThetaExpr& e) {
    const Rat& q = e.alpha_over_pi();
    if (!is_exact_alpha(q)) throw DomainError("integration needs an exact base angle");
    SymExpr acc = e.free_part() * sym_pi();
    for (const auto& [key, coef] : e.terms()) {
        Family f;
        switch (key.weight) {
            case ThetaWeight::One:
                f = key.is_sin ? Family::Sin : Family::Cos;
                break;
            case ThetaWeight::Lambda:
                f = key.is_sin ? Family::SinLambda : Family::CosLambda;
                break;
            case ThetaWeight::Phi:
                f = key.is_sin ? Family::SinPhi : Family::CosPhi;
                break;
            case ThetaWeight::Theta:
                f = key.is_sin ? Family::SinTheta : Family::CosTheta;
                break;
            default:
                throw DomainError("unknown weight");
        }
        if (family_is_weighted(f) && q != 0)
            throw DomainError("weighted terms integrate at alpha = 0 only");
        acc = acc + coef * complete_entry(f, key.k, key.l, q).value;
    }
    return acc;
}

} // namespace cf
