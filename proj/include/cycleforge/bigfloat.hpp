#pragma once

#include "cycleforge/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace cf {

// Dynamic-precision floating point. Precision is governed by
// Big::default_precision(); every numeric routine scopes its own
// working precision with PrecisionGuard instead of mutating the
// global default permanently.
using Big = boost::multiprecision::mpfr_float;

struct PrecisionGuard {
    unsigned saved;
    explicit PrecisionGuard(unsigned digits10) : saved(Big::default_precision()) {
        Big::default_precision(digits10);
    }
    ~PrecisionGuard() { Big::default_precision(saved); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;
};

// Default working precision in decimal digits; reads CYCLEFORGE_PRECISION
// once at first use, else 50.
unsigned default_digits();

// Constants at the current default precision.
Big big_pi();
Big big_sqrt3();

Big to_big(const Rat& q);
Big to_big(const Int& n);

} // namespace cf
