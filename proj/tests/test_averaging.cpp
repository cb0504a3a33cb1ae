#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cycleforge/averaging.hpp"
#include "cycleforge/quadrature.hpp"

#include <functional>
#include <random>
#include <vector>

using namespace cf;

namespace {

SPoly spq(std::vector<Rat> c) {
    std::vector<QS3> v;
    v.reserve(c.size());
    for (auto& q : c) v.emplace_back(q);
    return SPoly::from(std::move(v));
}

SymExpr sfrac(const SPoly& n, const SPoly& d) {
    return SymExpr::of(RatFuncW::of_frac(RatFrac(n, d)));
}

SymExpr pi_times(const Rat& c) { return sym_pi() * RatFuncW::of_rat(c); }

bool sym_eq(const SymExpr& a, const SymExpr& b) { return (a - b).is_zero(); }

Rat rnd_rat(std::mt19937& gen) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return Rat(num(gen), den(gen));
}

ParamId pid(bool is_q, int side, int i, int j, int order = 1) {
    ParamId id;
    id.is_q = is_q;
    id.side = side;
    id.order = order;
    id.i = i;
    id.j = j;
    return id;
}

// physical radius of the cycle labeled rho, stated independently of
// system_branches
Big physical_radius(SystemFamily f, const Big& rho) {
    switch (f) {
        case SystemFamily::S1: return rho;
        case SystemFamily::S2: return 2 * rho / (1 + rho * rho);
        case SystemFamily::S3: return rho / (4 * (1 + rho * rho));
    }
    return rho;
}

const Rat kAngles[3] = {Rat(0), Rat(-1, 3), Rat(-1, 2)};

struct Config {
    SystemFamily f;
    Rat a;
    std::size_t basis_size;
};

const Config kConfigs[5] = {
    {SystemFamily::S1, Rat(0), 6},      {SystemFamily::S2, Rat(0), 6},
    {SystemFamily::S2, Rat(-1, 3), 8},  {SystemFamily::S2, Rat(-1, 2), 6},
    {SystemFamily::S3, Rat(0), 6},
};

} // namespace

TEST_CASE("slot integrands stay within the pole and harmonic budget") {
    struct Budget {
        SystemFamily f;
        int pole, harmonic;
    };
    const Budget budgets[] = {
        {SystemFamily::S1, 2, 3},
        {SystemFamily::S2, 2, 4},
        {SystemFamily::S3, 4, 6},
    };
    for (const auto& b : budgets) {
        for (const ParamId& id : order_params(1)) {
            TrigRat g = first_order_integrand(b.f, id);
            CAPTURE(id.str());
            CHECK(g.pole <= b.pole);
            CHECK(g.rden <= 1);
            for (const auto& [key, p] : g.num) CHECK(key.a + key.b <= b.harmonic);
        }
        // standardized sides stay within the symbolic table support
        // (k <= 6, l <= 4 at every admitted base angle)
        for (const Rat& a : kAngles) {
            if (b.f != SystemFamily::S2 && a != Rat(0)) continue;
            const LinearizedSystem& lin = linearize(b.f, a);
            for (const auto* side : {&lin.plus, &lin.minus})
                for (const auto& [id, te] : side->f1)
                    for (const auto& [key, c] : te.terms()) {
                        CHECK(key.l <= b.pole);
                        CHECK(key.k <= b.harmonic);
                    }
        }
    }

    // the simplest slot in closed form: a constant x-perturbation
    // pushes forward to sin(psi) (1 + r cos(psi)) on the second system
    PrecisionGuard pg(50);
    const SystemChart& ch = system_chart(SystemFamily::S2);
    TrigRat g = first_order_integrand(SystemFamily::S2, pid(false, +1, 0, 0));
    for (const char* rs : {"0.17", "0.45", "0.83"}) {
        Big r(rs);
        for (const char* ps : {"0.3", "1.1", "2.5", "4.0"}) {
            Big psi(ps);
            Big want = sin(psi) * (1 + r * cos(psi));
            CHECK(abs(ch.alg.eval(g, r, psi) - want) < Big("1e-45"));
        }
    }
}

TEST_CASE("branch substitutions match their closed forms") {
    PrecisionGuard pg(50);
    const RatFrac rho = RatFrac::var();
    const RatFrac one_p = RatFrac(spq({Rat(1), Rat(0), Rat(1)}), spq({Rat(1)}));
    const RatFrac mob = RatFrac(spq({Rat(0), Rat(2)}), spq({Rat(1), Rat(0), Rat(1)}));

    // table variable on the physical cycle: +-2 rho / (1 + rho^2),
    // sides mirrored per family
    struct Sub {
        SystemFamily f;
        int sigma_plus;
    };
    for (const auto& [f, sg] : {Sub{SystemFamily::S1, -1}, Sub{SystemFamily::S2, +1},
                                Sub{SystemFamily::S3, -1}}) {
        const SystemBranches& br = system_branches(f);
        RatFrac want = sg > 0 ? mob : -mob;
        CHECK(br.plus.rho_sub == want);
        CHECK(br.minus.rho_sub == -want);
    }

    // amplitudes
    CHECK(system_branches(SystemFamily::S1).amplitude == rho);
    CHECK(system_branches(SystemFamily::S2).amplitude == mob);
    CHECK(system_branches(SystemFamily::S3).amplitude ==
          RatFrac(spq({Rat(0), Rat(1)}), spq({Rat(4), Rat(0), Rat(4)})));

    // rational branches in closed form
    {
        const SystemBranches& b2 = system_branches(SystemFamily::S2);
        const SystemBranches& b3 = system_branches(SystemFamily::S3);
        for (const char* Rs : {"0.2", "0.55", "0.81"}) {
            Big R(Rs);
            CHECK(abs(b2.plus.beta.eval_big(R) - R) < Big("1e-45"));
            CHECK(abs(b2.minus.beta.eval_big(R) + R) < Big("1e-45"));
            CHECK(abs(b2.plus.gamma.eval_big(R) - 1) < Big("1e-45"));
            CHECK(abs(b2.minus.gamma.eval_big(R) - 1) < Big("1e-45"));
            CHECK(abs(b3.plus.beta.eval_big(R) + R / 8) < Big("1e-45"));
            CHECK(abs(b3.minus.beta.eval_big(R) - R / 8) < Big("1e-45"));
            CHECK(abs(b3.plus.gamma.eval_big(R) - 1) < Big("1e-45"));
        }
    }

    // the algebraic branch of the first system: beta = (-1 + w)/R with
    // w = sqrt(1 - R^2), and gamma = 2 (1 - w)/R^2 on both sides
    {
        const SystemBranches& b1 = system_branches(SystemFamily::S1);
        for (const char* Rs : {"0.2", "0.55", "0.81"}) {
            Big R(Rs);
            Big w = sqrt(1 - R * R);
            CHECK(abs(b1.plus.beta.eval_big(R) - (w - 1) / R) < Big("1e-45"));
            CHECK(abs(b1.minus.beta.eval_big(R) - (1 - w) / R) < Big("1e-45"));
            CHECK(abs(b1.plus.gamma.eval_big(R) - 2 * (1 - w) / (R * R)) < Big("1e-45"));
            CHECK(abs(b1.minus.gamma.eval_big(R) - 2 * (1 - w) / (R * R)) < Big("1e-45"));
        }
    }

    // the log atom halves its argument exactly under the Moebius
    // substitution: L(2 rho/(1+rho^2)) = 2 L(rho)
    CHECK(sym_eq(subst_symexpr(sym_L(), mob), SymExpr(2) * sym_L()));
    CHECK(sym_eq(subst_symexpr(sym_L(), -mob), SymExpr(-2) * sym_L()));
}

TEST_CASE("chart tables agree with a finite-difference pushforward") {
    PrecisionGuard pg(60);
    const Big h("1e-15");
    const Big tol("1e-24");

    using F2 = std::function<Big(const Big&, const Big&)>;
    struct Sys {
        SystemFamily f;
        bool sin_first; // (u, v) = (r sin psi, -r cos psi)
        F2 fx, fy;      // physical point of (u, v)
        F2 iu, iv;      // linearized point of (x, y)
    };
    // forward and inverse charts restated from scratch
    const Sys systems[] = {
        {SystemFamily::S1, false,
         [](const Big& u, const Big& v) { return -v / ((u - 1) * (u - 1) + v * v); },
         [](const Big& u, const Big& v) {
             return (u - u * u - v * v) / ((u - 1) * (u - 1) + v * v);
         },
         [](const Big& x, const Big& y) {
             return (x * x + y * y + y) / (x * x + y * y + 2 * y + 1);
         },
         [](const Big& x, const Big& y) { return -x / (x * x + y * y + 2 * y + 1); }},
        {SystemFamily::S2, true,
         [](const Big& u, const Big& v) { return u / (1 - v); },
         [](const Big& u, const Big& v) { return v / (1 - v); },
         [](const Big& x, const Big& y) { return x / (y + 1); },
         [](const Big& x, const Big& y) { return y / (y + 1); }},
        {SystemFamily::S3, true,
         [](const Big& u, const Big& v) { return 3 * u / (8 * v + 1); },
         [](const Big& u, const Big& v) {
             return 3 * (4 * u * u + 8 * v * v + v) / ((8 * v + 1) * (8 * v + 1));
         },
         [](const Big& x, const Big& y) { return 3 * x / (32 * x * x - 24 * y + 9); },
         [](const Big& x, const Big& y) {
             return (3 * y - 4 * x * x) / (32 * x * x - 24 * y + 9);
         }},
    };

    for (const auto& sys : systems) {
        const SystemChart& ch = system_chart(sys.f);
        Big rp = physical_radius(sys.f, Big(1) / 3);
        for (const char* ps : {"0.3", "1.1", "2.5"}) {
            Big psi(ps);
            Big sn = sin(psi), cs = cos(psi);
            Big u = sys.sin_first ? Big(rp * sn) : Big(rp * cs);
            Big v = sys.sin_first ? Big(-rp * cs) : Big(rp * sn);
            Big x = sys.fx(u, v), y = sys.fy(u, v);
            // round trip of the restated charts at full precision
            CHECK(abs(sys.iu(x, y) - u) < Big("1e-55"));
            CHECK(abs(sys.iv(x, y) - v) < Big("1e-55"));

            Big ux = (sys.iu(x + h, y) - sys.iu(x - h, y)) / (2 * h);
            Big uy = (sys.iu(x, y + h) - sys.iu(x, y - h)) / (2 * h);
            Big vx = (sys.iv(x + h, y) - sys.iv(x - h, y)) / (2 * h);
            Big vy = (sys.iv(x, y + h) - sys.iv(x, y - h)) / (2 * h);
            for (int q = 0; q < 2; ++q)
                for (int i = 0; i + 0 <= 2; ++i)
                    for (int j = 0; i + j <= 2; ++j) {
                        ParamId id = pid(q == 1, +1, i, j);
                        Big m = pow(x, i) * pow(y, j);
                        Big P = q ? Big(0) : m, Q = q ? m : Big(0);
                        Big want = (u * (ux * P + uy * Q) + v * (vx * P + vy * Q)) / rp;
                        Big got = ch.alg.eval(first_order_integrand(sys.f, id), rp, psi);
                        CAPTURE(id.str());
                        CHECK(abs(want - got) < tol);
                    }
        }
    }
}

TEST_CASE("averaged function matches direct quadrature of the switched integrand") {
    PrecisionGuard pg(45);
    std::mt19937 gen(20240817);
    const Big rhos[3] = {Big(1) / 10, Big(1) / 3, Big(1) / 2};

    for (SystemFamily f :
         {SystemFamily::S1, SystemFamily::S2, SystemFamily::S3}) {
        const SystemChart& ch = system_chart(f);
        for (int trial = 0; trial < 20; ++trial) {
            Rat a = f == SystemFamily::S2 ? kAngles[trial % 3] : Rat(0);
            PerturbationSpec spec;
            spec.family = f;
            spec.alpha_over_pi = a;
            for (const ParamId& id : order_params(1)) spec.coeffs[id] = rnd_rat(gen);
            AveragedFunction af = first_order(spec);

            // raw integrands at the physical radius, summed pointwise;
            // the minus side is read a half turn behind
            std::vector<std::pair<Rat, TrigRat>> plus, minus;
            for (const auto& [id, v] : spec.coeffs) {
                if (v == 0) continue;
                (id.side > 0 ? plus : minus).emplace_back(v, first_order_integrand(f, id));
            }
            Big alpha = to_big(a) * big_pi();
            for (const Big& rho : rhos) {
                Big rp = physical_radius(f, rho);
                Big quad = integrate(
                    [&](const Big& th) -> Big {
                        Big acc = 0;
                        for (const auto& [v, g] : plus)
                            acc += to_big(v) * ch.alg.eval(g, rp, alpha + th);
                        for (const auto& [v, g] : minus)
                            acc += to_big(v) * ch.alg.eval(g, rp, alpha + th - big_pi());
                        return acc;
                    },
                    Big(0), big_pi(), Big("1e-26"));
                Big sym = af.expr.eval_big(rho, 40);
                CAPTURE(trial);
                CHECK(abs(sym - quad) < Big("1e-20"));
            }
        }
    }
}

TEST_CASE("published bases are recovered with exactly cancelling residuals") {
    std::mt19937 gen(7151623);
    for (const auto& cfg : kConfigs) {
        PerturbationSpec spec;
        spec.family = cfg.f;
        spec.alpha_over_pi = cfg.a;
        for (const ParamId& id : order_params(1)) {
            if (cfg.f == SystemFamily::S2 && id.i == 0 && id.j == 0) continue;
            spec.coeffs[id] = rnd_rat(gen);
        }
        AveragedFunction af = first_order(spec);
        REQUIRE(af.basis.size() == cfg.basis_size);
        CHECK(af.rho_star == Rat(1));
        SymExpr back;
        for (const auto& bp : af.basis) back = back + bp.coord * bp.fn;
        CHECK(sym_eq(back, af.expr));
        for (std::size_t n = 0; n < af.basis.size(); ++n)
            CHECK(af.basis[n].name == "k" + std::to_string(n));
    }
}

TEST_CASE("single-slot specs land on hand-checked coordinates") {
    auto coords_of = [](SystemFamily f, const Rat& a, const ParamId& id) {
        PerturbationSpec spec;
        spec.family = f;
        spec.alpha_over_pi = a;
        spec.coeffs[id] = Rat(1);
        return first_order(spec).basis;
    };

    // constant x-perturbation on the first system: 2 (rho^2 - 1)
    {
        auto basis = coords_of(SystemFamily::S1, Rat(0), pid(false, +1, 0, 0));
        REQUIRE(basis.size() == 6);
        CHECK(sym_eq(basis[0].coord, SymExpr(-2)));
        CHECK(sym_eq(basis[2].coord, SymExpr(2)));
        for (std::size_t n : {1u, 3u, 4u, 5u}) CHECK(basis[n].coord.is_zero());
    }

    // the xy slot on the second system carries the odd direction
    // pi rho^3/(rho^2+1) alone
    {
        auto basis = coords_of(SystemFamily::S2, Rat(0), pid(false, +1, 1, 1));
        REQUIRE(basis.size() == 6);
        CHECK(sym_eq(basis[2].coord, pi_times(Rat(1))));
        CHECK(sym_eq(basis[4].coord, pi_times(Rat(1))));
        for (std::size_t n : {0u, 1u, 3u, 5u}) CHECK(basis[n].coord.is_zero());
    }

    // the x^2 slot on the third system mixes the even rational block
    // with the log element
    {
        auto basis = coords_of(SystemFamily::S3, Rat(0), pid(false, +1, 2, 0));
        REQUIRE(basis.size() == 6);
        CHECK(sym_eq(basis[1].coord, SymExpr(Rat(3, 8))));
        CHECK(sym_eq(basis[3].coord, SymExpr(Rat(-3, 16))));
        CHECK(sym_eq(basis[5].coord, SymExpr(Rat(-3, 32))));
        for (std::size_t n : {0u, 2u, 4u}) CHECK(basis[n].coord.is_zero());
    }
}

TEST_CASE("basis functions match their closed forms") {
    const SPoly one = spq({Rat(1)});
    const SPoly r = spq({Rat(0), Rat(1)});
    const SPoly r2p1 = spq({Rat(1), Rat(0), Rat(1)});
    const SPoly sq = r2p1 * r2p1;

    // first system: polynomial block plus two log elements
    {
        const auto& basis = first_order_basis(SystemFamily::S1, Rat(0));
        REQUIRE(basis.size() == 6);
        CHECK(sym_eq(basis[0].second, SymExpr(1)));
        CHECK(sym_eq(basis[1].second, sfrac(r, one)));
        CHECK(sym_eq(basis[2].second, sfrac(spq({0, 0, 1}), one)));
        CHECK(sym_eq(basis[3].second, sfrac(spq({0, 0, 0, 1}), one)));
        CHECK(sym_eq(basis[4].second, sfrac(spq({1, 0, -1}), r) * sym_L()));
        CHECK(sym_eq(basis[5].second, sfrac(spq({0, 1, 0, -1}), one) * sym_L()));
    }

    // third system, cleared by (1+rho^2)^2: the log element carries
    // (rho^2+1)(rho^2-1)^2/rho
    {
        const auto& basis = first_order_basis(SystemFamily::S3, Rat(0));
        REQUIRE(basis.size() == 6);
        const SymExpr cleared[6] = {
            sfrac(r, one),
            sfrac(spq({0, 0, 1}), one),
            sfrac(spq({0, 0, 0, 1}), one),
            sfrac(spq({1, 0, 0, 0, 1}), one),
            sfrac(spq({0, 0, 0, 0, 0, 1}), one),
            sfrac(spq({1, 0, -1, 0, -1, 0, 1}), r) * sym_L(),
        };
        for (int n = 0; n < 6; ++n)
            CHECK(sym_eq(basis[static_cast<std::size_t>(n)].second * RatFuncW::of_frac(RatFrac(sq, one)),
                         cleared[n]));
    }

    // second system at the vertical base angle: the four rational
    // elements are plain monomials over (1+rho^2)^2
    {
        const auto& basis = first_order_basis(SystemFamily::S2, Rat(-1, 2));
        REQUIRE(basis.size() == 6);
        CHECK(sym_eq(basis[0].second, sfrac(r, sq)));
        CHECK(sym_eq(basis[1].second, sfrac(spq({0, 0, 1}), sq)));
        CHECK(sym_eq(basis[2].second, sfrac(spq({0, 0, 0, 1}), sq)));
        CHECK(sym_eq(basis[4].second, sfrac(spq({0, 0, 0, 0, 0, 1}), sq)));
    }
}

TEST_CASE("basis leading orders are strict and monic") {
    struct Case {
        Rat a;
        std::vector<int> orders;
    };
    // second-system bases; the last two at the oblique angle jump to
    // rho^8 and rho^10
    const Case cases[] = {
        {Rat(0), {1, 2, 3, 4, 5, 6}},
        {Rat(-1, 2), {1, 2, 3, 4, 5, 6}},
        {Rat(-1, 3), {1, 2, 3, 4, 5, 6, 8, 10}},
    };
    for (const auto& c : cases) {
        const auto& basis = first_order_basis(SystemFamily::S2, c.a);
        REQUIRE(basis.size() == c.orders.size());
        for (std::size_t n = 0; n < basis.size(); ++n) {
            SymSeries s = basis[n].second.series(c.orders[n] + 2);
            CAPTURE(n);
            REQUIRE(!s.is_zero());
            CHECK(s.val == c.orders[n]);
            CHECK(sym_eq(s.coef(c.orders[n]), SymExpr(1)));
        }
    }
}

TEST_CASE("parameter relations reproduce assigned coordinates") {
    // the six coordinates of a full first-order family on the first
    // system can be dialed freely by solving six slots against the
    // remaining eighteen
    std::mt19937 gen(430981);
    for (int trial = 0; trial < 3; ++trial) {
        std::map<std::string, Rat> p;
        for (const char* nm :
             {"p+1,0,0", "p+1,0,1", "p+1,0,2", "p+1,1,0", "p+1,1,1", "p+1,2,0", "p-1,0,2",
              "p-1,1,1", "q+1,0,0", "q+1,0,1", "q+1,0,2", "q+1,1,1", "q+1,2,0", "q-1,0,0",
              "q-1,0,2", "q-1,1,0", "q-1,1,1", "q-1,2,0"})
            p[nm] = rnd_rat(gen);
        Rat k0 = rnd_rat(gen), k2 = rnd_rat(gen), k4 = rnd_rat(gen), k5 = rnd_rat(gen);
        Rat c1 = rnd_rat(gen), c3 = rnd_rat(gen); // k1 = c1 pi, k3 = c3 pi

        Rat qsum = p["q-1,0,2"] + p["q-1,2,0"] + p["q+1,0,2"] + p["q+1,2,0"];
        p["p-1,0,0"] = p["p+1,0,0"] - k4 + k0 / 2;
        p["p-1,0,1"] = p["p-1,0,2"] + p["p+1,0,1"] - p["p+1,0,2"] - k4 + k5 + (k2 + k0) / 2;
        p["p-1,1,0"] = -p["p+1,1,0"] + 2 * (p["q-1,0,0"] + p["q+1,0,0"]) - qsum / 2 + c1 - c3;
        p["p-1,2,0"] = p["p+1,2,0"] + (p["q-1,1,1"] - p["q+1,1,1"]) / 2 - k4 - k5;
        p["q-1,0,1"] = 2 * p["q-1,0,0"] + 2 * p["q+1,0,0"] - p["q+1,0,1"] + qsum / 2 + c1 + c3;
        p["q+1,1,0"] = p["q-1,1,0"] + (p["q+1,1,1"] - p["q-1,1,1"] + k2 + k0) / 2;

        PerturbationSpec spec;
        spec.family = SystemFamily::S1;
        for (const auto& [nm, v] : p) spec.set(nm, v);
        AveragedFunction af = first_order(spec);
        REQUIRE(af.basis.size() == 6);
        CHECK(sym_eq(af.basis[0].coord, SymExpr(k0)));
        CHECK(sym_eq(af.basis[1].coord, pi_times(c1)));
        CHECK(sym_eq(af.basis[2].coord, SymExpr(k2)));
        CHECK(sym_eq(af.basis[3].coord, pi_times(c3)));
        CHECK(sym_eq(af.basis[4].coord, SymExpr(k4)));
        CHECK(sym_eq(af.basis[5].coord, SymExpr(k5)));
    }

    // zeroing the six coordinates while keeping the free slots random
    // must kill the averaged function identically
    for (int trial = 0; trial < 2; ++trial) {
        std::map<std::string, Rat> p;
        for (const char* nm :
             {"p+1,0,0", "p+1,0,1", "p+1,0,2", "p+1,1,0", "p+1,1,1", "p+1,2,0", "p-1,0,2",
              "p-1,1,1", "q+1,0,0", "q+1,0,1", "q+1,0,2", "q+1,1,1", "q+1,2,0", "q-1,0,0",
              "q-1,0,2", "q-1,1,0", "q-1,1,1", "q-1,2,0"})
            p[nm] = rnd_rat(gen);

        Rat qsum = p["q-1,0,2"] + p["q-1,2,0"] + p["q+1,0,2"] + p["q+1,2,0"];
        p["p-1,0,0"] = p["p+1,0,0"];
        p["p-1,0,1"] = p["p-1,0,2"] + p["p+1,0,1"] - p["p+1,0,2"];
        p["p-1,1,0"] = -p["p+1,1,0"] + 2 * (p["q-1,0,0"] + p["q+1,0,0"]) - qsum / 2;
        p["p-1,2,0"] = p["p+1,2,0"] + (p["q-1,1,1"] - p["q+1,1,1"]) / 2;
        p["q-1,0,1"] = 2 * p["q-1,0,0"] + 2 * p["q+1,0,0"] - p["q+1,0,1"] + qsum / 2;
        p["q+1,1,0"] = p["q-1,1,0"] + (p["q+1,1,1"] - p["q-1,1,1"]) / 2;

        PerturbationSpec spec;
        spec.family = SystemFamily::S1;
        for (const auto& [nm, v] : p) spec.set(nm, v);
        AveragedFunction af = first_order(spec);
        CHECK(af.expr.is_zero());
        for (const auto& b : af.basis) CHECK(b.coord.is_zero());
    }
}

TEST_CASE("coordinate forms are linear and the slot map has full row rank") {
    struct Expect {
        SystemFamily f;
        Rat a;
        std::size_t rows, cols;
    };
    const Expect expect[] = {
        {SystemFamily::S1, Rat(0), 6, 24},     {SystemFamily::S2, Rat(0), 6, 20},
        {SystemFamily::S2, Rat(-1, 3), 8, 20}, {SystemFamily::S2, Rat(-1, 2), 6, 20},
        {SystemFamily::S3, Rat(0), 6, 24},
    };
    for (const auto& e : expect) {
        const auto& forms = first_order_forms(e.f, e.a);
        REQUIRE(forms.size() == e.rows);
        NormalFormMap nf = normal_form(forms, NormalFormStrategy::FirstOrderBasis);
        CAPTURE(static_cast<int>(e.f));
        CHECK(nf.source.size() == e.cols);
        CHECK(nf.target.size() == e.rows);
        CHECK(nf.rank == static_cast<int>(e.rows));
        CHECK(nf.kernel_dim == static_cast<int>(e.cols - e.rows));
        for (bool d : nf.dependent) CHECK(!d);
        for (const auto& o : nf.offset) CHECK(o.is_zero());
    }

    // matrix entries agree with the single-slot decomposition
    {
        const auto& forms = first_order_forms(SystemFamily::S1, Rat(0));
        NormalFormMap nf = normal_form(forms, NormalFormStrategy::FirstOrderBasis);
        std::size_t col = 0;
        while (nf.source[col] != pid(false, +1, 0, 0)) ++col;
        CHECK(sym_eq(nf.matrix[0][col], SymExpr(-2)));
        CHECK(sym_eq(nf.matrix[2][col], SymExpr(2)));
    }

    // forms evaluated on a random spec reproduce the decomposition
    {
        std::mt19937 gen(99173);
        PerturbationSpec spec;
        spec.family = SystemFamily::S2;
        spec.alpha_over_pi = Rat(-1, 2);
        for (const ParamId& id : order_params(1)) {
            if (id.i == 0 && id.j == 0) continue;
            spec.coeffs[id] = rnd_rat(gen);
        }
        AveragedFunction af = first_order(spec);
        const auto& forms = first_order_forms(SystemFamily::S2, Rat(-1, 2));
        REQUIRE(af.basis.size() == forms.size());
        for (std::size_t n = 0; n < forms.size(); ++n) {
            SymExpr acc;
            for (const auto& [id, c] : forms[n].terms)
                acc = acc + c * RatFuncW::of_rat(spec.coef(id));
            CHECK(sym_eq(acc, af.basis[n].coord));
        }
    }
}

TEST_CASE("decomposition rejects degenerate bases and foreign targets") {
    const SPoly one = spq({Rat(1)});
    const SPoly r = spq({Rat(0), Rat(1)});
    std::vector<std::pair<std::string, SymExpr>> basis;
    CHECK_THROWS_AS(decompose_over_basis(SymExpr(1), basis), DomainError);

    basis.emplace_back("k0", sfrac(r, one));
    basis.emplace_back("k1", sfrac(r, one));
    CHECK_THROWS_AS(decompose_over_basis(sfrac(r, one), basis), DomainError);

    basis.pop_back();
    CHECK_THROWS_AS(decompose_over_basis(SymExpr(1), basis), DomainError);
    auto coords = decompose_over_basis(sfrac(spq({0, 7}), one), basis);
    REQUIRE(coords.size() == 1);
    CHECK(sym_eq(coords[0], SymExpr(7)));
}

TEST_CASE("constant slots on the second system leave the local frame") {
    PerturbationSpec spec;
    spec.family = SystemFamily::S2;
    spec.coeffs[pid(false, +1, 0, 0)] = Rat(1);
    AveragedFunction af = first_order(spec);
    CHECK(af.basis.empty());
    CHECK(sym_eq(af.expr, SymExpr(2)));

    spec.coeffs.clear();
    spec.coeffs[pid(false, -1, 0, 0)] = Rat(1);
    af = first_order(spec);
    CHECK(af.basis.empty());
    CHECK(sym_eq(af.expr, SymExpr(-2)));
}

TEST_CASE("unsupported base angles are refused") {
    CHECK_THROWS_AS(linearize(SystemFamily::S1, Rat(-1, 2)), DomainError);
    CHECK_THROWS_AS(linearize(SystemFamily::S3, Rat(-1, 3)), DomainError);
    CHECK_THROWS_AS(first_order_basis(SystemFamily::S2, Rat(1, 7)), DomainError);
    CHECK_THROWS_AS(first_order_component(SystemFamily::S1, Rat(-1, 3), pid(false, +1, 0, 0)),
                    DomainError);

    PerturbationSpec spec;
    spec.family = SystemFamily::S3;
    spec.alpha_over_pi = Rat(-1, 2);
    spec.coeffs[pid(false, +1, 1, 0)] = Rat(1);
    CHECK_THROWS_AS(first_order(spec), DomainError);
}

TEST_CASE("spec validation rejects malformed input") {
    PerturbationSpec spec;
    spec.family = SystemFamily::S2;
    spec.alpha_over_pi = Rat(1, 4);
    CHECK_THROWS_AS(spec.validate(), DomainError);

    spec.alpha_over_pi = Rat(0);
    spec.coeffs[pid(false, +1, 2, 0, 3)] = Rat(1);
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.coeffs.clear();

    spec.coeffs[pid(false, +1, 2, 1)] = Rat(1);
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.coeffs.clear();

    spec.origin_fixed = true;
    spec.coeffs[pid(true, -1, 0, 0)] = Rat(1);
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.coeffs[pid(true, -1, 0, 0)] = Rat(0);
    spec.validate();
}

TEST_CASE("parameter names round-trip through the codec") {
    for (int order : {1, 2})
        for (const ParamId& id : order_params(order)) {
            CHECK(ParamId::parse(id.str()) == id);
        }
    CHECK(order_params(1).size() == 24);
    CHECK(order_params(2).size() == 24);
    ParamId id = ParamId::parse("q-2,1,1");
    CHECK(id.is_q);
    CHECK(id.side == -1);
    CHECK(id.order == 2);
    CHECK(id.i == 1);
    CHECK(id.j == 1);

    for (const char* bad : {"", "x+1,0,0", "p1,0,0", "p+3,0,0", "p+1,0", "p+1,2,1", "p+1,a,0"})
        CHECK_THROWS_AS(ParamId::parse(bad), DomainError);

    auto m = parse_coeff_json("{\"p+1,0,1\": \"3/4\", \"q-1,2,0\": \"-2\"}");
    REQUIRE(m.size() == 2);
    CHECK(m[ParamId::parse("p+1,0,1")] == Rat(3, 4));
    CHECK(m[ParamId::parse("q-1,2,0")] == Rat(-2));
    CHECK_THROWS_AS(parse_coeff_json("[1, 2]"), DomainError);
    CHECK_THROWS_AS(parse_coeff_json("{\"p+1,0,1\": 3}"), DomainError);
    CHECK_THROWS_AS(parse_coeff_json("{\"p+1,0,1\": \"3/x\"}"), DomainError);
    CHECK_THROWS_AS(parse_coeff_json("not json"), DomainError);
}

TEST_CASE("taylor expansion at the origin") {
    PerturbationSpec spec;
    spec.family = SystemFamily::S2;
    spec.origin_fixed = true;
    spec.coeffs[pid(false, +1, 1, 1)] = Rat(1);
    AveragedFunction af = first_order(spec);

    // pi rho^3/(rho^2+1) expands with alternating odd coefficients
    auto tc = taylor_at_zero(af, 7);
    REQUIRE(tc.size() == 8);
    const Rat want[8] = {Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)};
    for (int k = 0; k < 8; ++k) {
        CAPTURE(k);
        CHECK(sym_eq(tc[static_cast<std::size_t>(k)], pi_times(want[k])));
    }

    // partial sums track the function near 0
    {
        PrecisionGuard pg(40);
        Big rho = Big(1) / 100;
        Big sum = 0, p = 1;
        for (int k = 0; k < 8; ++k) {
            sum += tc[static_cast<std::size_t>(k)].eval_big(rho, 30) * p;
            p *= rho;
        }
        CHECK(abs(sum - af.expr.eval_big(rho, 30)) < Big("1e-17"));
    }

    CHECK_THROWS_AS(taylor_at_zero(af, -1), DomainError);

    AveragedFunction loose = af;
    loose.origin_fixed = false;
    CHECK_THROWS_AS(taylor_at_zero(loose, 3), DomainError);

    AveragedFunction pole;
    pole.origin_fixed = true;
    pole.expr = sfrac(spq({Rat(1)}), spq({Rat(0), Rat(1)}));
    CHECK_THROWS_AS(taylor_at_zero(pole, 3), DomainError);

    PerturbationSpec zero;
    zero.family = SystemFamily::S1;
    zero.origin_fixed = true;
    auto zc = taylor_at_zero(first_order(zero), 5);
    for (const auto& c : zc) CHECK(c.is_zero());
}

TEST_CASE("configuration data is memoized by reference") {
    const auto* b1 = &first_order_basis(SystemFamily::S1, Rat(0));
    CHECK(b1 == &first_order_basis(SystemFamily::S1, Rat(0)));
    const auto* l1 = &linearize(SystemFamily::S2, Rat(0));
    CHECK(l1 == &linearize(SystemFamily::S2, Rat(0)));
    ParamId id = pid(false, +1, 0, 0);
    const auto* c1 = &first_order_component(SystemFamily::S1, Rat(0), id);
    CHECK(c1 == &first_order_component(SystemFamily::S1, Rat(0), id));

    // order tags share the radial shape
    ParamId id2 = id;
    id2.order = 2;
    CHECK(c1 == &first_order_component(SystemFamily::S1, Rat(0), id2));
}

TEST_CASE("order-two slots do not contribute at first order") {
    PerturbationSpec spec;
    spec.family = SystemFamily::S1;
    spec.coeffs[pid(false, +1, 2, 0, 2)] = Rat(5);
    spec.coeffs[pid(false, +1, 0, 0)] = Rat(1);
    AveragedFunction af = first_order(spec);
    CHECK(sym_eq(af.expr, sfrac(spq({Rat(-2), Rat(0), Rat(2)}), spq({Rat(1)}))));
}
