#pragma once

#include "cycleforge/perturb.hpp"
#include "cycleforge/ratfuncw.hpp"
#include "cycleforge/thetaexpr.hpp"
#include "cycleforge/trigring.hpp"

#include <map>
#include <utility>

namespace cf {

// Linearizing chart of one system, written on the polar parametrization
// of the linearized plane. All entries are elements over the chart's
// pole base D(r, cos psi):
//
//   x, y       physical coordinates,
//   u, v       linearized coordinates (the plane where the flow is the
//              rigid rotation (u', v') = (-v, u)),
//   j11..j22   Jacobian of (x, y) -> (u, v) evaluated on the chart, so
//              a field (P, Q) at (x, y) pushes forward to
//              (j11 P + j12 Q, j21 P + j22 Q).
struct SystemChart {
    TrigAlg alg;
    TrigRat x, y;
    TrigRat j11, j12, j21, j22;
    TrigRat u, v;
};

const SystemChart& system_chart(SystemFamily f);

// Monomial coefficients of the unperturbed field, keyed by (i, j) of
// x^i y^j.
std::map<std::pair<int, int>, Rat> unperturbed_field_x(SystemFamily f);
std::map<std::pair<int, int>, Rat> unperturbed_field_y(SystemFamily f);

// Radial substitution standardizing one side's pole: with r = beta(R)
// the base becomes gamma(R) * (1 + R cos psi), and on the physical
// cycle of amplitude parameter rho the table variable is R = rho_sub.
struct SideBranch {
    RatFuncW beta;
    RatFuncW gamma;
    RatFrac rho_sub;
};

struct SystemBranches {
    SideBranch plus, minus;
    RatFrac amplitude; // physical radius as a function of rho
};

const SystemBranches& system_branches(SystemFamily f);

// Substitutes r = branch.beta(R) into f and rewrites it over the
// standard pole (1 + R cos psi), as a ThetaExpr at the given base
// angle. The identity D(beta(R), cos psi) = gamma (1 + R cos psi) is
// verified exactly against alg's base before use; a mismatched branch
// throws DomainError.
ThetaExpr standardize(const TrigAlg& alg, const TrigRat& f, const SideBranch& branch,
                      const Rat& alpha_over_pi);

} // namespace cf
