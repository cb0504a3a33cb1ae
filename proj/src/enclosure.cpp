#include "cycleforge/enclosure.hpp"

#include "cycleforge/bigfloat.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace cf {

namespace {

// Label grammar: base ["^" power] ["_" qualifier]. The qualifier is
// free-form (precision tier, provenance) and ignored by the oracle.
struct ParsedLabel {
    std::string base;
    unsigned power = 1;
};

std::optional<ParsedLabel> parse_label(const std::string& label) {
    std::string head = label.substr(0, label.find('_'));
    ParsedLabel out;
    auto caret = head.find('^');
    out.base = head.substr(0, caret);
    if (caret != std::string::npos) {
        try {
            out.power = static_cast<unsigned>(std::stoul(head.substr(caret + 1)));
        } catch (...) {
            return std::nullopt;
        }
        if (out.power == 0) return std::nullopt;
    }
    if (out.base != "pi" && out.base != "sqrt3") return std::nullopt;
    return out;
}

std::optional<Big> oracle_value(const std::string& label) {
    auto parsed = parse_label(label);
    if (!parsed) return std::nullopt;
    Big base = parsed->base == "pi" ? big_pi() : big_sqrt3();
    return pow(base, static_cast<int>(parsed->power));
}

} // namespace

ConstEnclosure make_enclosure(std::string label, Rat lo, Rat hi) {
    if (lo > hi) throw DomainError("enclosure " + label + ": lo > hi");
    if (lo * hi <= 0) throw DomainError("enclosure " + label + ": endpoints must share a sign");
    {
        // Truth containment at ~120 digits. Endpoints are rational and the
        // known constants irrational, so a margin of a few ulps is decisive;
        // an enclosure tighter than the margin is rejected as unverifiable.
        PrecisionGuard guard(120);
        if (auto truth = oracle_value(label)) {
            Big v = *truth;
            Big slack = abs(v) * pow(Big(10), -110);
            if (!(to_big(lo) <= v - slack && v + slack <= to_big(hi)))
                throw DomainError("enclosure " + label + ": fails the truth-containment check");
        }
    }
    return ConstEnclosure{std::move(label), std::move(lo), std::move(hi)};
}

SignedBound sigma_bounds(const Rat& q, const ConstEnclosure& p) {
    if (q == 0) throw DomainError("sigma_bounds: q = 0 (drop the term instead)");
    if (p.lo * p.hi <= 0) throw DomainError("sigma_bounds: enclosure straddles zero");
    if (q > 0) return SignedBound(q * p.lo, q * p.hi);
    return SignedBound(q * p.hi, q * p.lo);
}

SignedBound chi_bounds(const SignedBound& q, const std::vector<unsigned>& exponents,
                       const Rat& h) {
    if (h <= 0) throw DomainError("chi_bounds: box half-width must be positive");
    unsigned long degree = 0;
    bool any_odd = false;
    for (unsigned e : exponents) {
        degree += e;
        any_odd = any_odd || (e % 2 != 0);
    }
    if (degree == 0) return q;
    if (!q.sign_definite())
        throw DomainError("chi_bounds: coefficient bound straddles zero");
    Rat hd = pow_rat(h, static_cast<long>(degree));
    if (any_odd) {
        // u^i covers [-h^d, h^d]; only the largest magnitude of q matters.
        Rat m = std::max(abs_rat(q.lower), abs_rat(q.upper)) * hd;
        return SignedBound(-m, m);
    }
    // u^i covers [0, h^d].
    if (q.lower > 0) return SignedBound(Rat(0), q.upper * hd);
    return SignedBound(q.lower * hd, Rat(0));
}

ConstEnclosure enclose_power(const ConstEnclosure& p, unsigned n) {
    if (n == 0) throw DomainError("enclose_power: exponent must be positive");
    if (p.lo <= 0) throw DomainError("enclose_power: requires a positive enclosure");
    if (n == 1) return p;
    std::string qual, head = p.label;
    if (auto us = p.label.find('_'); us != std::string::npos) {
        head = p.label.substr(0, us);
        qual = p.label.substr(us);
    }
    unsigned base_power = 1;
    if (auto caret = head.find('^'); caret != std::string::npos) {
        try {
            base_power = static_cast<unsigned>(std::stoul(head.substr(caret + 1)));
        } catch (...) {
            base_power = 1;
        }
        if (base_power >= 1)
            head = head.substr(0, caret);
    }
    std::string label = head + "^" + std::to_string(base_power * n) + qual;
    return make_enclosure(std::move(label), pow_rat(p.lo, n), pow_rat(p.hi, n));
}

const ConstEnclosure& pi_coarse() {
    static const ConstEnclosure e = make_enclosure("pi", Rat(333, 106), Rat(355, 113));
    return e;
}

const ConstEnclosure& sqrt3_coarse() {
    static const ConstEnclosure e = make_enclosure("sqrt3", Rat(5, 3), Rat(7, 4));
    return e;
}

const ConstEnclosure& pi_fine() {
    static const ConstEnclosure e = make_enclosure(
        "pi", Rat(Int("21053343141"), Int("6701487259")),
        Rat(Int("1783366216531"), Int("567663097408")));
    return e;
}

const ConstEnclosure& sqrt3_fine() {
    static const ConstEnclosure e =
        make_enclosure("sqrt3", Rat(716035, 413403), Rat(978122, 564719));
    return e;
}

std::map<std::string, ConstEnclosure> load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("load_constants: cannot open " + path);
    std::map<std::string, ConstEnclosure> table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string label, lo_s, hi_s;
        if (!(ss >> label >> lo_s >> hi_s))
            throw DomainError("load_constants: malformed line " + std::to_string(lineno));
        auto lo = parse_rat(lo_s), hi = parse_rat(hi_s);
        if (!lo || !hi)
            throw DomainError("load_constants: bad rational on line " + std::to_string(lineno));
        table.insert_or_assign(label, make_enclosure(label, *lo, *hi));
    }
    return table;
}

} // namespace cf
