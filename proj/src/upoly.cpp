#include "cycleforge/upoly.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/gmp.hpp>
#include <map>

namespace cf {

std::string qs3_str(const QS3& v) {
    if (v.b == 0) return rat_str(v.a);
    std::string s3 = rat_str(v.b) + "*s3";
    if (v.a == 0) return s3;
    return rat_str(v.a) + (v.b > 0 ? "+" : "") + s3;
}

QPoly primitive_part(const QPoly& p, Rat& content) {
    if (p.is_zero()) {
        content = 0;
        return QPoly();
    }
    Int num_gcd(0), den_lcm(1);
    for (const auto& v : p.c) {
        num_gcd = gcd(num_gcd, numerator(v));
        den_lcm = lcm(den_lcm, denominator(v));
    }
    Rat c(num_gcd, den_lcm);
    if (p.lead() < 0) c = -c;
    content = c;
    QPoly prim = p.scale(Rat(1) / c);
    return prim;
}

std::string poly_key(const QPoly& p) {
    std::string key;
    for (const auto& v : p.c) {
        key += rat_str(v);
        key += ',';
    }
    return key;
}

std::string poly_str(const QPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        const Rat& v = p.c[i];
        if (v == 0) continue;
        if (!out.empty()) out += v > 0 ? "+" : "-";
        else if (v < 0) out += "-";
        Rat av = abs_rat(v);
        bool unit = av == 1 && i > 0;
        if (!unit) out += rat_str(av);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

// Positive-scale normalization keeps Sturm sign sequences intact.
QPoly positive_primitive(const QPoly& p) {
    if (p.is_zero()) return p;
    Rat c;
    QPoly prim = primitive_part(p, c);
    if (p.lead() < 0) return prim.scale(Rat(-1));
    return prim;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(positive_primitive(p));
    QPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(positive_primitive(d));
    for (;;) {
        QPoly rem = chain[chain.size() - 2] % chain.back();
        if (rem.is_zero()) break;
        chain.push_back(positive_primitive(-rem));
        if (chain.back().deg() == 0) break;
    }
    return chain;
}

int sign_changes_at(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

QPoly deflate_root(const QPoly& p, const Rat& root) {
    // synthetic division by (x - root); remainder must be zero
    std::vector<Rat> q(p.c.size() - 1, Rat(0));
    Rat carry(0);
    for (std::size_t i = p.c.size(); i-- > 1;) {
        carry = p.c[i] + carry * root;
        q[i - 1] = carry;
    }
    return QPoly::from(std::move(q));
}

// Divisors of |n| by trial division; complete = false when the
// cofactor past the trial bound might be composite or the divisor
// count was capped.
std::vector<Int> divisors_of(Int n, bool& complete) {
    complete = true;
    if (n < 0) n = -n;
    std::vector<std::pair<Int, unsigned>> primes;
    for (Int d = 2; d * d <= n && d < 1000000; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            primes.emplace_back(d, e);
        }
    }
    if (n > 1) {
        if (n > Int("1000000000000")) complete = false;
        primes.emplace_back(n, 1);
    }
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : primes) {
        std::size_t base = divs.size();
        Int pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 4096) {
                    complete = false;
                    return divs;
                }
            }
        }
    }
    return divs;
}

bool is_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = sqrt(n);
    return root * root == n;
}

// Splits a primitive integer quadratic into two primitive linear
// factors when the discriminant is a perfect square.
bool split_quadratic(const QPoly& g, std::vector<QPoly>& out) {
    Int a = numerator(g.coef(2)), b = numerator(g.coef(1)), c = numerator(g.coef(0));
    Int s;
    if (!is_square(b * b - 4 * a * c, s)) return false;
    // roots (-b +- s)/(2a); emit den*x - num in lowest terms
    for (int pm : {1, -1}) {
        Rat root(-b + pm * s, 2 * a);
        QPoly lin = QPoly::from({-root, Rat(1)});
        Rat cc;
        out.push_back(primitive_part(lin, cc));
    }
    return true;
}

// Integer-coefficient quadratic*quadratic factorization of a primitive
// quartic with no rational roots. Complete over Q by Gauss's lemma, up
// to divisor-enumeration caps on huge coefficients.
bool split_quartic(const QPoly& g, std::vector<QPoly>& out) {
    Int g4 = numerator(g.coef(4)), g3 = numerator(g.coef(3)), g2 = numerator(g.coef(2)),
        g1 = numerator(g.coef(1)), g0 = numerator(g.coef(0));
    bool ok_lead = true, ok_const = true;
    auto lead_divs = divisors_of(g4, ok_lead);
    auto const_divs = divisors_of(g0, ok_const);
    auto emit = [&](const Int& l1, const Int& m1, const Int& c1, const Int& l2, const Int& m2,
                    const Int& c2) {
        for (auto [l, m, c] : {std::array<Int, 3>{l1, m1, c1}, std::array<Int, 3>{l2, m2, c2}}) {
            QPoly q = QPoly::from({Rat(c), Rat(m), Rat(l)});
            Rat cc;
            q = primitive_part(q, cc);
            out.push_back(std::move(q));
        }
        return true;
    };
    for (const Int& l1 : lead_divs) {
        Int l2 = g4 / l1;
        for (const Int& c1_abs : const_divs) {
            for (int cs : {1, -1}) {
                Int c1 = cs * c1_abs, c2;
                if (c1 == 0 || g0 % c1 != 0) continue;
                c2 = g0 / c1;
                Int det = l2 * c1 - l1 * c2;
                if (det != 0) {
                    Int m1n = g3 * c1 - l1 * g1, m2n = l2 * g1 - g3 * c2;
                    if (m1n % det != 0 || m2n % det != 0) continue;
                    Int m1 = m1n / det, m2 = m2n / det;
                    if (l1 * c2 + l2 * c1 + m1 * m2 == g2) return emit(l1, m1, c1, l2, m2, c2);
                } else {
                    // l2*m1^2 - g3*m1 + K*l1 = 0 with K = g2 - l1c2 - l2c1
                    Int K = g2 - l1 * c2 - l2 * c1, s;
                    if (!is_square(g3 * g3 - 4 * l2 * K * l1, s)) continue;
                    for (int pm : {1, -1}) {
                        Int num = g3 + pm * s, den = 2 * l2;
                        if (den == 0 || num % den != 0) continue;
                        Int m1 = num / den;
                        if ((g3 - l2 * m1) % l1 != 0) continue;
                        Int m2 = (g3 - l2 * m1) / l1;
                        if (m1 * c2 + m2 * c1 == g1) return emit(l1, m1, c1, l2, m2, c2);
                    }
                }
            }
        }
    }
    return false;
}

void factor_squarefree(const QPoly& f, std::vector<QPoly>& out);

// Even polynomial: factor in u = x^2, then refine each lifted factor.
void factor_even(const QPoly& g, std::vector<QPoly>& out) {
    std::vector<Rat> uc;
    for (std::size_t i = 0; i < g.c.size(); i += 2) uc.push_back(g.c[i]);
    PolyFactorization fu = factor_rational_poly(QPoly::from(std::move(uc)));
    for (const auto& [h, mult] : fu.factors) {
        QPoly lifted;
        lifted.c.assign(2 * h.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < h.c.size(); ++i) lifted.c[2 * i] = h.c[i];
        lifted.trim();
        for (int k = 0; k < mult; ++k) {
            if (lifted.deg() <= 4) factor_squarefree(lifted, out);
            else out.push_back(lifted);
        }
    }
}

// f primitive integer squarefree with positive lead; appends primitive
// integer irreducible (for deg <= 4) factors.
void factor_squarefree(const QPoly& f, std::vector<QPoly>& out) {
    if (f.deg() <= 0) return;
    QPoly g = f;
    // strip the root at zero first so divisor enumeration sees a
    // nonzero constant term
    while (g.coef(0) == 0 && g.deg() > 0) {
        out.push_back(QPoly::x());
        g = QPoly::from(std::vector<Rat>(g.c.begin() + 1, g.c.end()));
    }
    for (const Rat& root : rational_roots(g)) {
        Rat cc;
        out.push_back(primitive_part(QPoly::from({-root, Rat(1)}), cc));
        g = deflate_root(g, root);
    }
    Rat cc;
    g = primitive_part(g, cc);
    if (g.deg() <= 1) {
        if (g.deg() == 1) out.push_back(g);
        return;
    }
    if (g.deg() == 2) {
        std::vector<QPoly> split;
        if (split_quadratic(g, split))
            out.insert(out.end(), split.begin(), split.end());
        else
            out.push_back(g);
        return;
    }
    if (g.deg() == 3) {
        out.push_back(g); // cubic without rational roots is irreducible
        return;
    }
    if (g.deg() == 4) {
        std::vector<QPoly> split;
        if (split_quartic(g, split))
            out.insert(out.end(), split.begin(), split.end());
        else
            out.push_back(g);
        return;
    }
    bool even = true;
    for (std::size_t i = 1; i < g.c.size(); i += 2) even = even && g.c[i] == 0;
    if (even) {
        factor_even(g, out);
        return;
    }
    out.push_back(g);
}

} // namespace

std::vector<Rat> rational_roots(const QPoly& p) {
    std::vector<Rat> roots;
    if (p.deg() <= 0) return roots;
    Rat content;
    QPoly g = primitive_part(p, content);
    while (g.coef(0) == 0 && g.deg() > 0) {
        roots.emplace_back(0);
        g = QPoly::from(std::vector<Rat>(g.c.begin() + 1, g.c.end()));
    }
    if (g.deg() <= 0) return roots;
    bool ok_num = true, ok_den = true;
    auto nums = divisors_of(numerator(g.coef(0)), ok_num);
    auto dens = divisors_of(numerator(g.lead()), ok_den);
    std::vector<Rat> candidates;
    for (const Int& n : nums)
        for (const Int& d : dens)
            for (int s : {1, -1}) candidates.emplace_back(s * n, d);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rat& cand : candidates) {
        while (g.deg() > 0 && g.eval(cand) == 0) {
            roots.push_back(cand);
            g = deflate_root(g, cand);
        }
    }
    return roots;
}

PolyFactorization factor_rational_poly(const QPoly& p) {
    if (p.is_zero()) throw DomainError("factor: zero polynomial");
    PolyFactorization out;
    QPoly prim = primitive_part(p, out.constant);
    if (prim.deg() == 0) return out;
    // All emitted factors are primitive with positive lead, so by
    // Gauss's lemma their product reproduces prim exactly and the
    // constant needs no further adjustment.
    std::map<std::string, std::pair<QPoly, int>> merged;
    for (const auto& [monic_f, mult] : squarefree_decomposition(prim)) {
        Rat fc;
        QPoly fprim = primitive_part(monic_f, fc);
        std::vector<QPoly> irreducibles;
        factor_squarefree(fprim, irreducibles);
        for (const auto& g : irreducibles) {
            auto [it, fresh] = merged.try_emplace(poly_key(g), g, 0);
            it->second.second += static_cast<int>(mult);
        }
    }
    for (auto& [key, fm] : merged) out.factors.push_back(std::move(fm));
    QPoly check = QPoly::constant(out.constant);
    for (const auto& [g, mult] : out.factors) check = check * g.pow(static_cast<unsigned>(mult));
    if (check != p) throw DomainError("factor: internal consistency check failed");
    return out;
}

PolyFactorization factor_log_arg(const QPoly& p, const Rat& lo, const Rat& hi) {
    PolyFactorization f = factor_rational_poly(p);
    Rat mid = (lo + hi) / 2;
    for (auto& [g, mult] : f.factors) {
        if (count_roots_open(g, lo, hi) != 0)
            throw DomainError("log argument factor changes sign on the domain: " +
                              poly_str(g, "r"));
        if (g.eval(mid) < 0) {
            // flip the factor positive; odd multiplicity moves a sign
            // into the constant
            g = g.scale(Rat(-1));
            if (mult % 2 != 0) f.constant = -f.constant;
        }
    }
    if (f.constant <= 0)
        throw DomainError("log argument is not positive on the domain");
    return f;
}

int count_roots_open(const QPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw DomainError("count_roots_open: zero polynomial");
    if (!(a < b)) throw DomainError("count_roots_open: empty interval");
    if (p.deg() == 0) return 0;
    QPoly sf = p / gcd_monic(p, p.derivative());
    while (sf.deg() > 0 && sf.eval(a) == 0) sf = deflate_root(sf, a);
    while (sf.deg() > 0 && sf.eval(b) == 0) sf = deflate_root(sf, b);
    if (sf.deg() <= 0) return 0;
    auto chain = sturm_chain(sf);
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

bool positive_on_open(const QPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) return false;
    if (count_roots_open(p, a, b) != 0) return false;
    return p.eval((a + b) / 2) > 0;
}

} // namespace cf
