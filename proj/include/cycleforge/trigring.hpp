#pragma once

#include "cycleforge/bigfloat.hpp"
#include "cycleforge/upoly.hpp"

#include <map>

namespace cf {

// Exact trigonometric rational functions of a radial variable r and
// one angle psi:
//
//   f(r, psi) = sum_{a,b} P_{a,b}(r) cos^a(psi) sin^b(psi)
//               / (D(r, cos psi)^pole * r^rden)
//
// with b <= 1 after the sin^2 = 1 - cos^2 reduction. The pole base D
// is fixed per algebra (TrigAlg below); elements built against
// different bases must not be mixed.
struct TrigKey {
    int a = 0; // cos power
    int b = 0; // sin power, 0 or 1
    friend bool operator<(const TrigKey& x, const TrigKey& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
    friend bool operator==(const TrigKey& x, const TrigKey& y) {
        return x.a == y.a && x.b == y.b;
    }
};

struct TrigRat {
    std::map<TrigKey, QPoly> num;
    int pole = 0;
    int rden = 0;

    bool is_zero() const { return num.empty(); }
    // Inserts P cos^a sin^b, reducing sin powers above 1.
    void add_monomial(int a, int b, const QPoly& p);

    static TrigRat of_poly(const QPoly& p);
    static TrigRat monomial(int a, int b, const QPoly& p);
};

// Ring operations that need no pole base.
TrigRat operator*(const TrigRat& x, const TrigRat& y);
TrigRat operator-(const TrigRat& x);
TrigRat scale(const TrigRat& x, const Rat& s);
TrigRat div_r(const TrigRat& x); // divide by r, tracked exactly
// cos psi -> -cos psi, sin psi -> -sin psi: the half-turn shift
// psi -> psi - pi. The result lives over the reflected pole base.
TrigRat shift_half_turn(const TrigRat& x);

// One pole base D(r, cos psi) and the operations whose result depends
// on it (alignment of pole powers, d/dr, evaluation).
class TrigAlg {
  public:
    // base must be pole- and r-denominator-free.
    explicit TrigAlg(TrigRat base);

    const TrigRat& base() const { return base_; }
    TrigAlg reflected() const; // base with cos psi -> -cos psi

    TrigRat add(const TrigRat& x, const TrigRat& y) const;
    TrigRat sub(const TrigRat& x, const TrigRat& y) const;
    bool equal(const TrigRat& x, const TrigRat& y) const;
    TrigRat derivative_r(const TrigRat& x) const;
    Big eval(const TrigRat& x, const Big& r, const Big& psi) const;

  private:
    TrigRat base_;
    TrigRat base_dr_; // coefficient-wise d/dr of the base
    // x brought to the given pole and r powers by multiplying through.
    TrigRat lifted(const TrigRat& x, int pole, int rden) const;
};

} // namespace cf
