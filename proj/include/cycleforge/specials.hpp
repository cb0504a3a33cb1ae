#pragma once

#include "cycleforge/bigfloat.hpp"

namespace cf {

// The two periodic kernels and the constants-of-integration functions
// attached to the trig integral tables. All evaluate at the current
// working precision and require |r| < 1.

// phi(r, theta) = (theta - 2 atan(sqrt((1-r)/(1+r)) tan(theta/2))) / sqrt(1-r^2),
// taken on the branch that is continuous on (-pi, pi) and vanishes at
// theta = 0, +-pi; arguments outside [-pi, pi] are wrapped periodically.
Big phi_theta(const Big& r, const Big& theta);

// lambda(r, theta) = log(1 + r cos theta)
Big lambda_theta(const Big& r, const Big& theta);

// L(r) = log((1-r)/(1+r))
Big special_L(const Big& r);

// Lambda_0^0(r) = int_0^pi lambda(r,.) = pi (log(1 + sqrt(1-r^2)) - log 2)
Big special_lambda00(const Big& r);

// Lambda_1^0(r) = int_0^pi lambda(r,.)/(1+r cos .) = (pi log(1-r^2) - Lambda_0^0(r)) / sqrt(1-r^2)
Big special_lambda10(const Big& r);

// Phi_0^0(r) = int_0^pi phi(r, .): no closed form, adaptive quadrature
// of the defining integral to the given tolerance.
Big special_phi00(const Big& r, const Big& tol);

enum class SpecialKind { Phi, Lambda, Phi00, Lambda00, Lambda10, LFn };

struct SpecialFnValue {
    SpecialKind kind;
    Big r;
    Big theta; // used by Phi and Lambda only
};

// Evaluates at `digits` decimal digits (quadrature tolerance 10^-digits
// for Phi00, default 30).
Big eval_special(const SpecialFnValue& f, unsigned digits = 30);

} // namespace cf
