#pragma once

#include "cycleforge/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace cf {

// The three quadratic isochronous systems the toolkit perturbs.
enum class SystemFamily { S1, S2, S3 };

std::string system_name(SystemFamily f);
SystemFamily system_from_name(const std::string& name);

// One perturbation coefficient slot: the weight of x^i y^j in the
// order-k piece of one side's field, written "p+1,0,1" for the
// x-component (p) of the "+" side at order 1 with monomial x^0 y^1.
struct ParamId {
    bool is_q = false; // p: x-component, q: y-component
    int side = +1;     // switching side, +1 or -1
    int order = 1;     // power of the perturbation parameter, 1 or 2
    int i = 0, j = 0;  // monomial x^i y^j, i + j <= 2

    std::string str() const;
    static ParamId parse(const std::string& name);

    friend bool operator<(const ParamId& a, const ParamId& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.is_q != b.is_q) return a.is_q < b.is_q;
        if (a.side != b.side) return a.side > b.side; // "+" first
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
    friend bool operator==(const ParamId& a, const ParamId& b) {
        return a.is_q == b.is_q && a.side == b.side && a.order == b.order && a.i == b.i &&
               a.j == b.j;
    }
    friend bool operator!=(const ParamId& a, const ParamId& b) { return !(a == b); }
};

// The 24 slots of one order: both letters, both sides, all i + j <= 2.
std::vector<ParamId> order_params(int order);

// Piecewise quadratic perturbation of one system, switching along the
// line through the origin at angle alpha. Missing coefficients are
// zero. origin_fixed asserts both constant terms vanish, which keeps
// the averaged functions analytic at the origin.
struct PerturbationSpec {
    SystemFamily family = SystemFamily::S1;
    Rat alpha_over_pi = Rat(0);
    std::map<ParamId, Rat> coeffs;
    bool origin_fixed = false;

    Rat coef(const ParamId& id) const;
    void set(const std::string& name, const Rat& v);
    // Throws DomainError on a malformed slot, an alpha outside
    // {0, -1/3, -1/2} of pi, or a nonzero constant with origin_fixed.
    void validate() const;
};

// Parses a JSON object mapping coefficient names to rational strings,
// e.g. {"p+1,0,1": "3/4", "q-2,1,1": "-2/7"}.
std::map<ParamId, Rat> parse_coeff_json(const std::string& text);

} // namespace cf
