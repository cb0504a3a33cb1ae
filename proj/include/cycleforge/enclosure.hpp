#pragma once

#include "cycleforge/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace cf {

// Closed rational interval [lower, upper].
struct SignedBound {
    Rat lower, upper;
    SignedBound(Rat lo, Rat hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower > upper) throw DomainError("SignedBound: lower > upper");
    }
    bool contains(const Rat& x) const { return lower <= x && x <= upper; }
    bool sign_definite() const { return lower * upper > 0; }
};

// Rational enclosure of a single irrational constant. Construction
// enforces lo <= hi and lo*hi > 0, and, when the label names a constant
// the library knows how to evaluate (pi, sqrt3, and their integer
// powers, with an optional _qualifier suffix), that the true value lies
// strictly inside [lo, hi]. Unknown labels skip the oracle check.
struct ConstEnclosure {
    std::string label;
    Rat lo, hi;
};

ConstEnclosure make_enclosure(std::string label, Rat lo, Rat hi);

// [q*lo, q*hi] for q > 0, [q*hi, q*lo] for q < 0. q = 0 is rejected:
// the caller drops zero terms instead.
SignedBound sigma_bounds(const Rat& q, const ConstEnclosure& p);

// Range of q*u^i over the box |u_j| <= h, from the sign of q and the
// parity of the exponents. exponents all zero returns q itself; any
// other case requires q sign-definite.
SignedBound chi_bounds(const SignedBound& q, const std::vector<unsigned>& exponents,
                       const Rat& h);

// Endpoint powers [lo^n, hi^n]; requires lo > 0. The result label
// composes the exponent so the oracle check re-validates it.
ConstEnclosure enclose_power(const ConstEnclosure& p, unsigned n);

// Shipped enclosures: the coarse pair and the fine pair. Coarse bounds
// are the classical convergents 333/106 < pi < 355/113 and
// 5/3 < sqrt3 < 7/4; fine bounds are deep continued-fraction
// convergents good to ~20 digits.
const ConstEnclosure& pi_coarse();
const ConstEnclosure& sqrt3_coarse();
const ConstEnclosure& pi_fine();
const ConstEnclosure& sqrt3_fine();

// Plain-text table, one enclosure per line: label lo_n/lo_d hi_n/hi_d.
// Blank lines and lines starting with # are skipped.
std::map<std::string, ConstEnclosure> load_constants(const std::string& path);

} // namespace cf
