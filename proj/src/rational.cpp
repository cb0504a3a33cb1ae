#include "cycleforge/rational.hpp"

namespace cf {

Rat pow_rat(const Rat& q, long n) {
    if (n == 0) return Rat(1);
    if (n < 0) {
        if (q == 0) throw DomainError("pow_rat: 0 to a negative power");
        return Rat(1) / pow_rat(q, -n);
    }
    // binary powering; exponents here stay small but deg-27 determinants add up
    Rat base = q, acc(1);
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

static bool parse_int(const std::string& s, Int& out) {
    if (s.empty()) return false;
    bool negative = s[0] == '-';
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = Int(s.substr(i));
    if (negative) out = -out;
    return true;
}

std::optional<Rat> parse_rat(const std::string& s) {
    auto slash = s.find('/');
    Int num, den(1);
    if (slash == std::string::npos) {
        if (!parse_int(s, num)) return std::nullopt;
    } else {
        if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    return Rat(num, den);
}

std::string rat_str(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

} // namespace cf
