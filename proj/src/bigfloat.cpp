#include "cycleforge/bigfloat.hpp"

#include <cstdlib>

namespace cf {

unsigned default_digits() {
    static unsigned cached = [] {
        if (const char* env = std::getenv("CYCLEFORGE_PRECISION")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 10 && v <= 100000) return static_cast<unsigned>(v);
        }
        return 50u;
    }();
    return cached;
}

Big big_pi() {
    Big p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Big big_sqrt3() { return sqrt(Big(3)); }

Big to_big(const Rat& q) { return Big(numerator(q)) / Big(denominator(q)); }

Big to_big(const Int& n) { return Big(n); }

} // namespace cf
