#pragma once

#include "cycleforge/bigfloat.hpp"

#include <functional>

namespace cf {

// Adaptive tanh-sinh quadrature of f over the finite interval [a, b]
// at the current working precision. Halves the step until two
// consecutive levels agree to tol; throws DomainError when max_level
// refinements are not enough. The integrand must be finite on the
// closed interval.
Big integrate(const std::function<Big(const Big&)>& f, const Big& a, const Big& b,
              const Big& tol, int max_level = 14);

} // namespace cf
