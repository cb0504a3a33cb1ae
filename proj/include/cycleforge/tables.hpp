#pragma once

#include "cycleforge/thetaexpr.hpp"

#include <string>

namespace cf {

// Closed forms for the twelve trig integral families
//
//   S^a_{k,l}(r, theta) = int_a^{a+theta} sin(k psi) (1 + r cos psi)^-l dpsi
//   C^a_{k,l}(r, theta) = int_a^{a+theta} cos(k psi) (1 + r cos psi)^-l dpsi
//   s^a_{k,l}(r)        = the same over [a, a+pi]
//   c^a_{k,l}(r)
//   s^w_{k,l}(r)        = int_0^pi T(k th) weight(r, th) (1 + r cos th)^-l dth
//   c^w_{k,l}(r)          for weight w in {lambda, phi, theta}
//
// built by the two-step recurrences in k with exact base cases. Entries
// are memoized per key; the closed forms hold for r != 0, and each entry
// carries the r -> 0 limit separately.

enum class Family {
    PartialSin, // S, theta-dependent
    PartialCos, // C, theta-dependent
    Sin,        // s
    Cos,        // c
    SinLambda,
    CosLambda,
    SinPhi,
    CosPhi,
    SinTheta,
    CosTheta,
};

bool family_is_partial(Family f);
bool family_is_weighted(Family f); // lambda/phi/theta weights, defined at alpha = 0 only
std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct IntegralKey {
    Family family = Family::Sin;
    int k = 0;
    int l = 0;
    Rat alpha_over_pi{0}; // base angle / pi; exact set {0, -1/3, -1/2}
};

struct TableEntry {
    SymExpr value;   // valid for r != 0
    SymExpr at_zero; // limit r -> 0
};

struct PartialEntry {
    ThetaExpr value;
    ThetaExpr at_zero;
};

// Closed form for a complete family (throws for Partial*). References
// stay valid for the process lifetime; entries are immutable once built.
const TableEntry& table_eval(const IntegralKey& key);

// Closed form for S/C (throws for the complete families).
const PartialEntry& table_eval_partial(const IntegralKey& key);

// Numeric value to `digits` decimal digits. For the exact base angles
// this evaluates the closed form; any other alpha falls back to adaptive
// quadrature of the defining integral (complete and plain families only).
Big table_eval_numeric(const IntegralKey& key, const Big& r, unsigned digits = 30);

// Same for S/C with the upper-limit offset theta in [-pi, pi].
Big table_eval_numeric(const IntegralKey& key, const Big& r, const Big& theta,
                       unsigned digits = 30);

// int_0^pi e(r, theta) dtheta for a ThetaExpr with base angle alpha,
// i.e. psi = theta + alpha sweeps [alpha, alpha + pi]. Weighted terms
// require alpha = 0 (the weighted families exist only there).
SymExpr integrate_full(const ThetaExpr& e);

// Exact cos(q pi), sin(q pi) for rational q with denominator dividing 6.
QS3 cos_pi(const Rat& q);
QS3 sin_pi(const Rat& q);

} // namespace cf
