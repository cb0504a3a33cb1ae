#include "cycleforge/averaging.hpp"

#include "cycleforge/tables.hpp"

#include <array>
#include <map>
#include <set>
#include <utility>

namespace cf {

namespace {

void require_alpha(const Rat& alpha_over_pi) {
    if (alpha_over_pi != Rat(0) && alpha_over_pi != Rat(-1, 3) && alpha_over_pi != Rat(-1, 2))
        throw DomainError("averaging: unsupported base angle");
}

using ConfigKey = std::pair<int, Rat>;

ConfigKey config_key(SystemFamily f, const Rat& alpha_over_pi) {
    require_alpha(alpha_over_pi);
    if (f != SystemFamily::S2 && alpha_over_pi != Rat(0))
        throw DomainError("averaging: base angle not supported for this family");
    return {static_cast<int>(f), alpha_over_pi};
}

TrigRat trig_pow(const TrigRat& x, int n) {
    TrigRat acc = TrigRat::of_poly(QPoly::constant(Rat(1)));
    for (int k = 0; k < n; ++k) acc = acc * x;
    return acc;
}

SPoly sp(std::vector<Rat> c) {
    std::vector<QS3> v;
    v.reserve(c.size());
    for (auto& q : c) v.emplace_back(q);
    return SPoly::from(std::move(v));
}

SymExpr frac(const SPoly& n, const SPoly& d) {
    return SymExpr::of(RatFuncW::of_frac(RatFrac(n, d)));
}

std::vector<std::pair<std::string, SymExpr>> build_basis(SystemFamily f, const Rat& alpha) {
    std::vector<std::pair<std::string, SymExpr>> out;
    auto push = [&](SymExpr e) { out.emplace_back("k" + std::to_string(out.size()), std::move(e)); };
    const SPoly one = sp({Rat(1)});
    const SPoly r = sp({Rat(0), Rat(1)});
    const SPoly r2p1 = sp({Rat(1), Rat(0), Rat(1)});
    const SPoly sq = r2p1 * r2p1;
    const SPoly cu = sq * r2p1;
    const SPoly rm1sq = sp({Rat(1), Rat(0), Rat(-2), Rat(0), Rat(1)}); // (rho^2-1)^2
    const RatFrac g0(sp({Rat(0), Rat(2)}), r2p1);                      // 2 rho / (rho^2+1)

    switch (f) {
        case SystemFamily::S1:
            // the cycle parameter coincides with the amplitude here
            push(SymExpr(1));
            push(frac(r, one));
            push(frac(sp({0, 0, 1}), one));
            push(frac(sp({0, 0, 0, 1}), one));
            push(frac(sp({1, 0, -1}), r) * sym_L());
            push(frac(sp({0, 1, 0, -1}), one) * sym_L());
            return out;
        case SystemFamily::S3:
            // the log coefficient needs the full (rho^2-1)^2 (rho^2+1)
            // factor or the span misses the actual image
            push(frac(r, sq));
            push(frac(sp({0, 0, 1}), sq));
            push(frac(sp({0, 0, 0, 1}), sq));
            push(frac(sp({1, 0, 0, 0, 1}), sq));
            push(frac(sp({0, 0, 0, 0, 0, 1}), sq));
            push(frac(sp({1, 0, -1, 0, -1, 0, 1}), r * sq) * sym_L());
            return out;
        case SystemFamily::S2: break;
    }

    if (alpha == Rat(0)) {
        // six independent directions, monic leading orders rho^1..rho^6
        push(frac(r, sq));
        push(frac(sp({0, 0, 1}), sq));
        push(frac(sp({0, 0, 0, 1}), sq));
        push(frac(sp({0, 0, -3}), sq.scale(QS3(4))) +
             frac(sp({0, -3}), r2p1.scale(QS3(8))) * sym_L());
        push(frac(sp({0, 0, 0, 0, 0, 1}), sq));
        push(frac(sp({15, 0, 14, 0, 15}).scale(QS3(-35)), sq.scale(QS3(768))) +
             frac(sp({5, 0, -2, 0, 5}).scale(QS3(-35)), (r2p1 * r).scale(QS3(512))) * sym_L());
    } else if (alpha == Rat(-1, 2)) {
        SymExpr ph = sym_phi(Rat(1, 2), g0);
        push(frac(r, sq));
        push(frac(sp({0, 0, 1}), sq));
        push(frac(sp({0, 0, 0, 1}), sq));
        push(frac(sp({0, 0, 3}), sq.scale(QS3(4))) -
             frac((r * rm1sq).scale(QS3(3)), cu.scale(QS3(8))) * ph);
        push(frac(sp({0, 0, 0, 0, 0, 1}), sq));
        push(frac(sp({525, 0, -490, 0, 525}), sq.scale(QS3(768))) -
             frac(sp({175, 0, 70, 0, 175}) * rm1sq, (r * cu).scale(QS3(512))) * ph);
    } else {
        SymExpr lt = sym_log_frac(RatFrac(sp({Rat(1), Rat(-1), Rat(1)}), sp({Rat(1), Rat(1), Rat(1)})));
        SymExpr ph = sym_phi(Rat(2, 3), g0) + sym_phi(Rat(1, 3), g0);
        const SPoly rden = r2p1 * r;
        auto s3c = [](long k) { return QS3(Rat(0), Rat(k)); }; // k sqrt(3)
        push(frac(r, r2p1));
        push(frac(sp({0, 0, 1}), sq));
        push(frac(sp({0, 0, 0, 1}), sq));
        push(frac(sp({54733, 0, 94452, 0, 54733}).scale(QS3(5)), sq.scale(QS3(6912))) +
             frac(sp({1366, 0, 1847, 0, 1366}).scale(QS3(15)), rden.scale(QS3(1024))) * lt +
             frac((sp({236, 0, -247, 0, 236}) * rm1sq).scale(s3c(25)),
                  (r * cu).scale(QS3(82944))) * ph);
        push(frac(sp({0, 0, 0, 0, 0, 1}), sq));
        push(frac(sp({21835, 0, 40596, 0, 21835}).scale(QS3(-35)), sq.scale(QS3(6912))) +
             frac(sp({550, 0, 797, 0, 550}).scale(QS3(-105)), rden.scale(QS3(1024))) * lt +
             frac((sp({176, 0, -181, 0, 176}) * rm1sq).scale(s3c(-175)),
                  (r * cu).scale(QS3(82944))) * ph);
        push(frac(sp({227, 0, 444, 0, 227}).scale(QS3(245)), sq.scale(QS3(768))) +
             frac(sp({122, 0, 181, 0, 122}).scale(QS3(315)), rden.scale(QS3(1024))) * lt +
             frac((sp({116, 0, -115, 0, 116}) * rm1sq).scale(s3c(35)),
                  (r * cu).scale(QS3(9216))) * ph);
        push(frac(sp({77, 0, 156, 0, 77}).scale(QS3(-385)), sq.scale(QS3(2304))) +
             frac(sp({2, 0, 3, 0, 2}).scale(QS3(-3465)), rden.scale(QS3(1024))) * lt +
             frac((sp({8, 0, -7, 0, 8}) * rm1sq).scale(s3c(-385)),
                  (r * cu).scale(QS3(27648))) * ph);
    }
    return out;
}

// ---- exact decomposition over a basis -------------------------------

std::string atoms_key(const std::vector<std::pair<Atom, int>>& atoms) {
    std::string k;
    for (const auto& [a, e] : atoms) {
        k += a.key;
        k += '^';
        k += std::to_string(e);
        k += '|';
    }
    return k;
}

RatFrac wfree(const RatFuncW& c, const char* what) {
    if (c.has_w()) throw DomainError(std::string("decompose: ") + what + " carries sqrt(1-r^2)");
    return RatFrac(c.A, c.D);
}

// atom monomials with the pi factor peeled off: key -> coefficient per
// pi power
using PiLayers = std::map<std::string, std::array<RatFrac, 2>>;

PiLayers pi_layers(const SymExpr& e, int max_pi, const char* what) {
    PiLayers out;
    for (const auto& [mk, t] : e.terms) {
        int pp = 0;
        std::vector<std::pair<Atom, int>> rest;
        for (const auto& [a, exp] : t.atoms) {
            if (a.kind == Atom::Kind::Pi)
                pp = exp;
            else
                rest.emplace_back(a, exp);
        }
        if (pp > max_pi)
            throw DomainError(std::string("decompose: ") + what + " has an unsupported pi power");
        auto& slot = out[atoms_key(rest)];
        slot[static_cast<std::size_t>(pp)] =
            slot[static_cast<std::size_t>(pp)] + wfree(t.coef, what);
    }
    return out;
}

// Gaussian elimination over QS3 with two right-hand sides sharing one
// matrix. Requires a unique solution.
void solve_two(std::vector<std::vector<QS3>>& a, std::vector<QS3>& b0, std::vector<QS3>& b1,
               std::vector<QS3>& x, std::vector<QS3>& y) {
    const int n = static_cast<int>(a.size());
    const int m = n ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivot_row(static_cast<std::size_t>(m), -1);
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(row)]);
        std::swap(b0[static_cast<std::size_t>(p)], b0[static_cast<std::size_t>(row)]);
        std::swap(b1[static_cast<std::size_t>(p)], b1[static_cast<std::size_t>(row)]);
        auto& ar = a[static_cast<std::size_t>(row)];
        QS3 inv = ar[static_cast<std::size_t>(col)].inv();
        for (int j = col; j < m; ++j) ar[static_cast<std::size_t>(j)] *= inv;
        b0[static_cast<std::size_t>(row)] *= inv;
        b1[static_cast<std::size_t>(row)] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            QS3 fct = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (fct.is_zero()) continue;
            auto& ai = a[static_cast<std::size_t>(i)];
            for (int j = col; j < m; ++j)
                ai[static_cast<std::size_t>(j)] -= fct * ar[static_cast<std::size_t>(j)];
            b0[static_cast<std::size_t>(i)] -= fct * b0[static_cast<std::size_t>(row)];
            b1[static_cast<std::size_t>(i)] -= fct * b1[static_cast<std::size_t>(row)];
        }
        pivot_row[static_cast<std::size_t>(col)] = row;
        ++row;
    }
    for (int col = 0; col < m; ++col)
        if (pivot_row[static_cast<std::size_t>(col)] < 0)
            throw DomainError("decompose: basis functions are dependent");
    for (int i = row; i < n; ++i)
        if (!b0[static_cast<std::size_t>(i)].is_zero() || !b1[static_cast<std::size_t>(i)].is_zero())
            throw DomainError("decompose: target lies outside the basis span");
    x.resize(static_cast<std::size_t>(m));
    y.resize(static_cast<std::size_t>(m));
    for (int col = 0; col < m; ++col) {
        x[static_cast<std::size_t>(col)] = b0[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(col)])];
        y[static_cast<std::size_t>(col)] = b1[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(col)])];
    }
}

} // namespace

TrigRat first_order_integrand(SystemFamily f, const ParamId& id) {
    const SystemChart& c = system_chart(f);
    TrigRat m = trig_pow(c.x, id.i) * trig_pow(c.y, id.j);
    TrigRat p = (id.is_q ? c.j12 : c.j11) * m;
    TrigRat q = (id.is_q ? c.j22 : c.j21) * m;
    return div_r(c.alg.add(c.u * p, c.v * q));
}

const LinearizedSystem& linearize(SystemFamily f, const Rat& alpha_over_pi) {
    static std::map<ConfigKey, LinearizedSystem> memo;
    ConfigKey key = config_key(f, alpha_over_pi);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const SystemChart& c = system_chart(f);
    const SystemBranches& br = system_branches(f);
    LinearizedSystem lin;
    lin.family = f;
    lin.alpha_over_pi = alpha_over_pi;
    lin.plus.branch = br.plus;
    lin.minus.branch = br.minus;
    for (const ParamId& id : order_params(1)) {
        TrigRat raw = first_order_integrand(f, id);
        if (id.side > 0)
            lin.plus.f1.emplace(id, standardize(c.alg, raw, br.plus, alpha_over_pi));
        else
            lin.minus.f1.emplace(
                id, standardize(c.alg.reflected(), shift_half_turn(raw), br.minus, alpha_over_pi));
    }
    return memo.emplace(std::move(key), std::move(lin)).first->second;
}

const SymExpr& first_order_component(SystemFamily f, const Rat& alpha_over_pi,
                                     const ParamId& id) {
    static std::map<std::pair<ConfigKey, ParamId>, SymExpr> memo;
    ParamId slot = id;
    slot.order = 1; // the radial shape does not depend on the order tag
    auto key = std::make_pair(config_key(f, alpha_over_pi), slot);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const LinearizedSystem& lin = linearize(f, alpha_over_pi);
    const LinearizedSide& side = slot.side > 0 ? lin.plus : lin.minus;
    SymExpr comp = subst_symexpr(integrate_full(side.f1.at(slot)), side.branch.rho_sub);
    return memo.emplace(std::move(key), std::move(comp)).first->second;
}

const std::vector<std::pair<std::string, SymExpr>>&
first_order_basis(SystemFamily f, const Rat& alpha_over_pi) {
    static std::map<ConfigKey, std::vector<std::pair<std::string, SymExpr>>> memo;
    ConfigKey key = config_key(f, alpha_over_pi);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, build_basis(f, alpha_over_pi)).first;
    return it->second;
}

std::vector<SymExpr>
decompose_over_basis(const SymExpr& target,
                     const std::vector<std::pair<std::string, SymExpr>>& basis) {
    const std::size_t m = basis.size();
    if (m == 0) throw DomainError("decompose: empty basis");

    std::vector<PiLayers> bl;
    bl.reserve(m);
    for (const auto& [name, fn] : basis) bl.push_back(pi_layers(fn, 0, name.c_str()));
    PiLayers tl = pi_layers(target, 1, "target");

    std::set<std::string> keys;
    for (const auto& b : bl)
        for (const auto& [k, c] : b) keys.insert(k);
    for (const auto& [k, c] : tl) keys.insert(k);

    std::vector<std::vector<QS3>> rows;
    std::vector<QS3> rhs0, rhs1;
    for (const auto& k : keys) {
        // clear denominators: each column and both layers of the target
        // get the product of all the other denominators
        std::vector<RatFrac> col(m);
        for (std::size_t n = 0; n < m; ++n) {
            auto it = bl[n].find(k);
            if (it != bl[n].end()) col[n] = it->second[0];
        }
        RatFrac t0, t1;
        if (auto it = tl.find(k); it != tl.end()) {
            t0 = it->second[0];
            t1 = it->second[1];
        }
        SPoly lcd = SPoly::constant(QS3(1));
        for (const auto& c : col) lcd = lcd * c.den;
        lcd = lcd * t0.den * t1.den;
        std::vector<SPoly> colp(m);
        int degmax = -1;
        auto cleared = [&](const RatFrac& c) {
            SPoly p = c.num * divmod(lcd, c.den).first;
            if (p.deg() > degmax) degmax = p.deg();
            return p;
        };
        for (std::size_t n = 0; n < m; ++n) colp[n] = cleared(col[n]);
        SPoly t0p = cleared(t0), t1p = cleared(t1);
        for (int pw = 0; pw <= degmax; ++pw) {
            std::vector<QS3> row(m);
            bool nz = false;
            for (std::size_t n = 0; n < m; ++n) {
                row[n] = colp[n].coef(static_cast<std::size_t>(pw));
                nz = nz || !row[n].is_zero();
            }
            QS3 b0 = t0p.coef(static_cast<std::size_t>(pw));
            QS3 b1 = t1p.coef(static_cast<std::size_t>(pw));
            if (!nz && b0.is_zero() && b1.is_zero()) continue;
            rows.push_back(std::move(row));
            rhs0.push_back(b0);
            rhs1.push_back(b1);
        }
    }

    std::vector<QS3> x, y;
    solve_two(rows, rhs0, rhs1, x, y);

    std::vector<SymExpr> coords;
    coords.reserve(m);
    SymExpr residual = target;
    for (std::size_t n = 0; n < m; ++n) {
        SymExpr c = SymExpr(x[n]) + sym_pi() * SymExpr(y[n]);
        residual = residual - c * basis[n].second;
        coords.push_back(std::move(c));
    }
    if (!residual.is_zero()) throw DomainError("decompose: expansion failed to cancel exactly");
    return coords;
}

AveragedFunction first_order(const PerturbationSpec& spec) {
    spec.validate();
    SymExpr acc;
    bool constant_slot = false;
    for (const auto& [id, v] : spec.coeffs) {
        if (id.order != 1 || v == 0) continue;
        if (id.i == 0 && id.j == 0) constant_slot = true;
        acc = acc + first_order_component(spec.family, spec.alpha_over_pi, id) * RatFuncW::of_rat(v);
    }
    AveragedFunction af;
    af.order = 1;
    af.expr = acc;
    af.origin_fixed = spec.origin_fixed;
    const auto& basis = first_order_basis(spec.family, spec.alpha_over_pi);
    // a constant slot pushes the function outside the published S2
    // span (it no longer vanishes at 0), so no decomposition is
    // attached there
    if (!basis.empty() && !(spec.family == SystemFamily::S2 && constant_slot)) {
        auto coords = decompose_over_basis(acc, basis);
        for (std::size_t n = 0; n < basis.size(); ++n)
            af.basis.push_back({basis[n].first, coords[n], basis[n].second});
    }
    return af;
}

const std::vector<LinearForm>& first_order_forms(SystemFamily f, const Rat& alpha_over_pi) {
    static std::map<ConfigKey, std::vector<LinearForm>> memo;
    ConfigKey key = config_key(f, alpha_over_pi);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const auto& basis = first_order_basis(f, alpha_over_pi);
    if (basis.empty()) throw DomainError("forms: configuration has no published basis");
    std::vector<LinearForm> forms(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n) forms[n].name = basis[n].first;
    // rows stay dense so the slot universe (and with it the kernel
    // dimension of the slot map) survives into normal_form
    for (const ParamId& id : order_params(1)) {
        if (f == SystemFamily::S2 && id.i == 0 && id.j == 0) continue;
        auto coords = decompose_over_basis(first_order_component(f, alpha_over_pi, id), basis);
        for (std::size_t n = 0; n < basis.size(); ++n)
            forms[n].terms.emplace_back(id, coords[n]);
    }
    return memo.emplace(std::move(key), std::move(forms)).first->second;
}

namespace {

// constant a + b pi as the polynomial a + b t, embedded in QS3(t)
RatFrac pi_linear(const SymExpr& e) {
    QS3 a(0), b(0);
    for (const auto& [mk, t] : e.terms) {
        bool plain = t.atoms.empty();
        bool pi1 = t.atoms.size() == 1 && t.atoms[0].first.kind == Atom::Kind::Pi &&
                   t.atoms[0].second == 1;
        if ((!plain && !pi1) || !t.coef.is_constant())
            throw DomainError("normal form: entry is not of the form a + b pi");
        (plain ? a : b) = t.coef.constant_value();
    }
    return RatFrac(SPoly::from({a, b}), SPoly::constant(QS3(1)));
}

} // namespace

NormalFormMap normal_form(const std::vector<LinearForm>& coeffs, NormalFormStrategy) {
    NormalFormMap nf;
    std::set<ParamId> srcset;
    for (const auto& fm : coeffs)
        for (const auto& [id, c] : fm.terms) srcset.insert(id);
    nf.source.assign(srcset.begin(), srcset.end());
    std::map<ParamId, std::size_t> colof;
    for (std::size_t i = 0; i < nf.source.size(); ++i) colof[nf.source[i]] = i;
    const std::size_t m = nf.source.size();

    // row-by-row elimination over QS3(t), t standing for pi; a row
    // reduced to zero depends on the rows above it
    std::vector<std::vector<RatFrac>> pivots;
    std::vector<std::size_t> pivcol;
    for (const auto& fm : coeffs) {
        nf.target.push_back(fm.name);
        nf.offset.push_back(SymExpr());
        std::vector<SymExpr> row(m);
        std::vector<RatFrac> rrow(m);
        for (const auto& [id, c] : fm.terms) {
            row[colof[id]] = c;
            rrow[colof[id]] = pi_linear(c);
        }
        nf.matrix.push_back(std::move(row));
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            if (rrow[pivcol[k]].is_zero()) continue;
            RatFrac fct = rrow[pivcol[k]] / pivots[k][pivcol[k]];
            for (std::size_t j = 0; j < m; ++j) rrow[j] = rrow[j] - fct * pivots[k][j];
        }
        std::size_t lead = m;
        for (std::size_t j = 0; j < m; ++j)
            if (!rrow[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == m) {
            nf.dependent.push_back(true);
        } else {
            nf.dependent.push_back(false);
            pivots.push_back(std::move(rrow));
            pivcol.push_back(lead);
        }
    }
    nf.rank = static_cast<int>(pivots.size());
    nf.kernel_dim = static_cast<int>(m) - nf.rank;
    return nf;
}

std::vector<SymExpr> taylor_at_zero(const AveragedFunction& f, int n) {
    if (!f.origin_fixed) throw DomainError("taylor: the spec does not fix the origin");
    if (n < 0) throw DomainError("taylor: negative order");
    SymSeries s = f.expr.series(n + 1);
    if (!s.is_zero() && s.val < 0) throw DomainError("taylor: expansion has a pole at 0");
    std::vector<SymExpr> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.push_back(s.coef(k));
    return out;
}

} // namespace cf
