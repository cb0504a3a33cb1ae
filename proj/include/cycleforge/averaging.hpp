#pragma once

#include "cycleforge/families.hpp"
#include "cycleforge/perturb.hpp"
#include "cycleforge/symexpr.hpp"
#include "cycleforge/thetaexpr.hpp"
#include "cycleforge/trigring.hpp"

#include <map>
#include <string>
#include <vector>

namespace cf {

// First- and second-order averaged functions of the switched
// perturbation, assembled per parameter slot and expressed in the
// cycle parameter rho on (0, rho_star). The physical amplitude of the
// cycle labeled rho is system_branches(family).amplitude at rho.

// Radial component of the pushforward of the slot's monomial through
// the side's chart, as a function of the side's own polar angle. The
// slot's order tag is ignored; the shape depends only on letter and
// exponents.
TrigRat first_order_integrand(SystemFamily f, const ParamId& id);

// One side of the piecewise system after the radial substitution that
// brings every pole base to 1 + R cos psi: the substitution data and
// the standardized first-order integrand of each unit slot. Minus-side
// integrands are stored already shifted by a half turn, so both sides
// integrate over the same angular window [alpha, alpha + pi].
struct LinearizedSide {
    SideBranch branch;
    std::map<ParamId, ThetaExpr> f1;
};

struct LinearizedSystem {
    SystemFamily family;
    Rat alpha_over_pi = Rat(0);
    LinearizedSide plus, minus;
};

// S2 admits all three base angles; S1 and S3 only alpha = 0. Other
// combinations throw DomainError.
const LinearizedSystem& linearize(SystemFamily f, const Rat& alpha_over_pi);

// Half-turn integral of one slot's standardized integrand, mapped back
// to the cycle parameter rho.
const SymExpr& first_order_component(SystemFamily f, const Rat& alpha_over_pi,
                                     const ParamId& id);

struct BasisPair {
    std::string name; // coefficient name, "k0", "k1", ...
    SymExpr coord;    // constant coefficient of this spec, a + b pi
    SymExpr fn;       // basis function of rho
};

struct AveragedFunction {
    int order = 1;
    SymExpr expr; // function of rho on (0, rho_star)
    std::vector<BasisPair> basis;
    Rat rho_star = Rat(1);
    bool origin_fixed = false;
};

// Published decomposition basis of the configuration, as pairs
// (coefficient name, basis function). Empty when the configuration has
// no published basis.
const std::vector<std::pair<std::string, SymExpr>>&
first_order_basis(SystemFamily f, const Rat& alpha_over_pi);

// Exact coordinates of target in the span of the basis functions over
// constants a + b pi (a, b in Q(sqrt 3)). Throws DomainError when the
// basis is degenerate for this purpose or the target lies outside the
// span; on success target minus the expansion is verified to cancel
// identically.
std::vector<SymExpr>
decompose_over_basis(const SymExpr& target,
                     const std::vector<std::pair<std::string, SymExpr>>& basis);

AveragedFunction first_order(const PerturbationSpec& spec);

// One coordinate of the averaged function as an exact linear form in
// the perturbation parameters.
struct LinearForm {
    std::string name;
    std::vector<std::pair<ParamId, SymExpr>> terms; // constant coefficients
};

// Basis coordinates of the first-order function as linear forms in the
// order-1 parameter slots. For the S2 configurations the four constant
// slots are excluded (their contribution leaves the published span).
const std::vector<LinearForm>& first_order_forms(SystemFamily f, const Rat& alpha_over_pi);

enum class NormalFormStrategy { FirstOrderBasis };

// Linear map from parameter slots to coordinates, with its exact rank.
// Entries are constants a + b pi; the rank is computed over the field
// Q(sqrt 3)(pi), which equals the real rank since pi is transcendental.
struct NormalFormMap {
    std::vector<ParamId> source;
    std::vector<std::string> target;
    std::vector<std::vector<SymExpr>> matrix; // target rows x source columns
    std::vector<SymExpr> offset;              // affine part, zero at first order
    std::vector<bool> dependent; // row lies in the span of earlier rows
    int rank = 0;
    int kernel_dim = 0; // of the map, = #source - rank
};

NormalFormMap normal_form(const std::vector<LinearForm>& coeffs, NormalFormStrategy strategy);

// Exact Taylor coefficients of f.expr at rho = 0, orders 0..n. Requires
// origin_fixed; throws DomainError when the expansion is not analytic
// at 0.
std::vector<SymExpr> taylor_at_zero(const AveragedFunction& f, int n);

} // namespace cf
