#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace cf {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Thrown when an operation's mathematical hypotheses are violated
// (sign-indefinite enclosure, zero coefficient where the case split
// needs a sign, argument outside the proven domain, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline int sgn(const Rat& q) { return q.sign(); }
inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// q^n with integer n; n < 0 requires q != 0.
Rat pow_rat(const Rat& q, long n);

// Accepts "a/b" or "a" with optional sign, arbitrary length. b > 0 after
// normalization. Returns nullopt on malformed input or zero denominator.
std::optional<Rat> parse_rat(const std::string& s);

// "a/b", or "a" when the denominator is 1.
std::string rat_str(const Rat& q);

} // namespace cf
