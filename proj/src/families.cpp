#include "cycleforge/families.hpp"

#include <cstdlib>

namespace cf {

namespace {

QPoly qp(std::vector<Rat> c) { return QPoly::from(std::move(c)); }

TrigRat mono(int a, int b, QPoly p) { return TrigRat::monomial(a, b, std::move(p)); }

// u = r cos psi, v = r sin psi; base (u-1)^2 + v^2 = r^2 + 1 - 2 r cos.
SystemChart build_s1() {
    TrigRat base = mono(0, 0, qp({1, 0, 1}));
    base.add_monomial(1, 0, qp({0, -2}));
    TrigRat x = mono(0, 1, qp({0, -1}));
    x.pole = 1;
    TrigRat y = mono(0, 0, qp({0, 0, -1}));
    y.add_monomial(1, 0, qp({0, 1}));
    y.pole = 1;
    // conformal pair: j11 = j22 = -2v(1-u), j12 = -j21 = (1-u)^2 - v^2
    TrigRat j11 = mono(0, 1, qp({0, -2}));
    j11.add_monomial(1, 1, qp({0, 0, 2}));
    TrigRat j12 = mono(0, 0, qp({1, 0, -1}));
    j12.add_monomial(1, 0, qp({0, -2}));
    j12.add_monomial(2, 0, qp({0, 0, 2}));
    return SystemChart{TrigAlg(base), x,   y,
                       j11,           j12, -j12,
                       j11,           mono(1, 0, qp({0, 1})), mono(0, 1, qp({0, 1}))};
}

// u = r sin psi, v = -r cos psi; base 1 - v = 1 + r cos.
SystemChart build_s2() {
    TrigRat base = mono(0, 0, qp({1}));
    base.add_monomial(1, 0, qp({0, 1}));
    TrigRat x = mono(0, 1, qp({0, 1}));
    x.pole = 1;
    TrigRat y = mono(1, 0, qp({0, -1}));
    y.pole = 1;
    TrigRat j11 = base;
    TrigRat j12 = mono(0, 1, qp({0, -1}));
    j12.add_monomial(1, 1, qp({0, 0, -1}));
    TrigRat j21; // lower-triangular chart
    TrigRat j22 = mono(0, 0, qp({1}));
    j22.add_monomial(1, 0, qp({0, 2}));
    j22.add_monomial(2, 0, qp({0, 0, 1}));
    return SystemChart{TrigAlg(base), x,   y,
                       j11,           j12, j21,
                       j22,           mono(0, 1, qp({0, 1})), mono(1, 0, qp({0, -1}))};
}

// u = r sin psi, v = -r cos psi; base 8v + 1 = 1 - 8 r cos.
SystemChart build_s3() {
    TrigRat base = mono(0, 0, qp({1}));
    base.add_monomial(1, 0, qp({0, -8}));
    TrigRat x = mono(0, 1, qp({0, 3}));
    x.pole = 1;
    // y = 3(4u^2 + 8v^2 + v)/base^2 with 4u^2 + 8v^2 = 4r^2 + 4r^2 cos^2
    TrigRat y = mono(0, 0, qp({0, 0, 12}));
    y.add_monomial(1, 0, qp({0, -3}));
    y.add_monomial(2, 0, qp({0, 0, 12}));
    y.pole = 2;
    TrigRat j11 = mono(0, 0, qp({Rat(1, 3), 0, Rat(-64, 3)}));
    j11.add_monomial(1, 0, qp({0, Rat(-8, 3)}));
    j11.add_monomial(2, 0, qp({0, 0, Rat(64, 3)}));
    TrigRat j12 = mono(0, 1, qp({0, Rat(8, 3)}));
    j12.add_monomial(1, 1, qp({0, 0, Rat(-64, 3)}));
    TrigRat j22 = mono(0, 0, qp({Rat(1, 3)}));
    j22.add_monomial(1, 0, qp({0, Rat(-16, 3)}));
    j22.add_monomial(2, 0, qp({0, 0, Rat(64, 3)}));
    return SystemChart{TrigAlg(base), x,   y,
                       j11,           j12, -j12,
                       j22,           mono(0, 1, qp({0, 1})), mono(1, 0, qp({0, -1}))};
}

SPoly sp(std::vector<Rat> c) {
    std::vector<QS3> v;
    v.reserve(c.size());
    for (auto& q : c) v.emplace_back(q);
    return SPoly::from(std::move(v));
}

RatFrac mobius(const Rat& lead) {
    return RatFrac(sp({Rat(0), lead}), sp({Rat(1), Rat(0), Rat(1)}));
}

SystemBranches build_branches(SystemFamily f) {
    switch (f) {
        case SystemFamily::S1: {
            // r = (-1 + sqrt(1 - R^2))/R resp. (1 - sqrt(1 - R^2))/R;
            // both turn the base into 2(1 - w)/R^2 * (1 + R cos psi)
            RatFuncW gamma(sp({Rat(2)}), sp({Rat(-2)}), sp({Rat(0), Rat(0), Rat(1)}));
            SideBranch plus{RatFuncW(sp({Rat(-1)}), sp({Rat(1)}), sp({Rat(0), Rat(1)})), gamma,
                            mobius(Rat(-2))};
            SideBranch minus{RatFuncW(sp({Rat(1)}), sp({Rat(-1)}), sp({Rat(0), Rat(1)})), gamma,
                             mobius(Rat(2))};
            return SystemBranches{plus, minus, RatFrac::var()};
        }
        case SystemFamily::S2:
            return SystemBranches{
                SideBranch{RatFuncW::var(), RatFuncW::of(QS3(1)), mobius(Rat(2))},
                SideBranch{-RatFuncW::var(), RatFuncW::of(QS3(1)), mobius(Rat(-2))},
                mobius(Rat(2))};
        case SystemFamily::S3:
            return SystemBranches{
                SideBranch{RatFuncW(sp({Rat(0), Rat(-1, 8)}), SPoly(), sp({Rat(1)})),
                           RatFuncW::of(QS3(1)), mobius(Rat(-2))},
                SideBranch{RatFuncW(sp({Rat(0), Rat(1, 8)}), SPoly(), sp({Rat(1)})),
                           RatFuncW::of(QS3(1)), mobius(Rat(2))},
                RatFrac(sp({Rat(0), Rat(1)}), sp({Rat(4), Rat(0), Rat(4)}))};
    }
    throw DomainError("branches: bad family tag");
}

RatFuncW pow_rf(const RatFuncW& f, int n) {
    RatFuncW acc = RatFuncW::of(QS3(1));
    RatFuncW b = n < 0 ? f.inv() : f;
    for (int k = std::abs(n); k > 0; --k) acc = acc * b;
    return acc;
}

} // namespace

const SystemChart& system_chart(SystemFamily f) {
    static const SystemChart s1 = build_s1();
    static const SystemChart s2 = build_s2();
    static const SystemChart s3 = build_s3();
    switch (f) {
        case SystemFamily::S1: return s1;
        case SystemFamily::S2: return s2;
        case SystemFamily::S3: return s3;
    }
    throw DomainError("chart: bad family tag");
}

std::map<std::pair<int, int>, Rat> unperturbed_field_x(SystemFamily f) {
    switch (f) {
        case SystemFamily::S1: return {{{0, 1}, Rat(-1)}, {{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}};
        case SystemFamily::S2: return {{{0, 1}, Rat(-1)}, {{2, 0}, Rat(1)}};
        case SystemFamily::S3: return {{{0, 1}, Rat(-1)}, {{2, 0}, Rat(-4, 3)}};
    }
    throw DomainError("field: bad family tag");
}

std::map<std::pair<int, int>, Rat> unperturbed_field_y(SystemFamily f) {
    switch (f) {
        case SystemFamily::S1: return {{{1, 0}, Rat(1)}, {{1, 1}, Rat(2)}};
        case SystemFamily::S2: return {{{1, 0}, Rat(1)}, {{1, 1}, Rat(1)}};
        case SystemFamily::S3: return {{{1, 0}, Rat(1)}, {{1, 1}, Rat(-16, 3)}};
    }
    throw DomainError("field: bad family tag");
}

const SystemBranches& system_branches(SystemFamily f) {
    static const SystemBranches s1 = build_branches(SystemFamily::S1);
    static const SystemBranches s2 = build_branches(SystemFamily::S2);
    static const SystemBranches s3 = build_branches(SystemFamily::S3);
    switch (f) {
        case SystemFamily::S1: return s1;
        case SystemFamily::S2: return s2;
        case SystemFamily::S3: return s3;
    }
    throw DomainError("branches: bad family tag");
}

ThetaExpr standardize(const TrigAlg& alg, const TrigRat& f, const SideBranch& branch,
                      const Rat& alpha_over_pi) {
    auto lift = [](const Rat& q) { return RatFuncW::of_rat(q); };
    // the claimed pole identity, checked exactly
    std::map<TrigKey, RatFuncW> subbed;
    for (const auto& [k, p] : alg.base().num) {
        if (k.b != 0) throw DomainError("standardize: pole base carries a sin factor");
        subbed[k] = p.eval_with(branch.beta, lift);
    }
    RatFuncW R = RatFuncW::var();
    bool claim = subbed.size() == 2 && subbed.count(TrigKey{0, 0}) && subbed.count(TrigKey{1, 0}) &&
                 subbed[TrigKey{0, 0}] == branch.gamma && subbed[TrigKey{1, 0}] == branch.gamma * R;
    if (!claim) throw DomainError("standardize: branch does not put the pole in standard form");

    ThetaExpr cos1(alpha_over_pi), sin1(alpha_over_pi);
    cos1.add_term(ThetaWeight::One, false, 1, 0, SymExpr(1));
    sin1.add_term(ThetaWeight::One, true, 1, 0, SymExpr(1));
    RatFuncW scale = pow_rf(branch.gamma, -f.pole) * pow_rf(branch.beta, -f.rden);
    ThetaExpr out(alpha_over_pi);
    for (const auto& [k, p] : f.num) {
        ThetaExpr term(alpha_over_pi);
        term.add_term(ThetaWeight::One, false, 0, f.pole,
                      SymExpr::of(p.eval_with(branch.beta, lift) * scale));
        for (int a = 0; a < k.a; ++a) term = term * cos1;
        if (k.b) term = term * sin1;
        out = out + term;
    }
    return out;
}

} // namespace cf
