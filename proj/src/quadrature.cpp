#include "cycleforge/quadrature.hpp"

#include "cycleforge/rational.hpp"

namespace cf {

// x(t) = c + s*tanh((pi/2) sinh t), dx/dt = s*(pi/2) cosh t / cosh^2((pi/2) sinh t).
// Weights decay double-exponentially, so the node range [-tmax, tmax]
// only needs to grow logarithmically with the tolerance.
Big integrate(const std::function<Big(const Big&)>& f, const Big& a, const Big& b,
              const Big& tol, int max_level) {
    if (tol <= 0) throw DomainError("integrate: tolerance must be positive");
    Big c = (a + b) / 2, s = (b - a) / 2;
    if (s == 0) return Big(0);
    Big hp = big_pi() / 2;
    Big y = log(4 / tol) / hp;
    Big tmax = log(y + sqrt(y * y + 1)) + Big(1) / 2;

    auto node_term = [&](const Big& t) {
        Big u = hp * sinh(t);
        Big ch = cosh(u);
        Big x = c + s * tanh(u);
        Big w = hp * cosh(t) / (ch * ch);
        return w * f(x);
    };

    Big h(1);
    Big sum = node_term(Big(0));
    Big prev = 0;
    bool have_prev = false;
    for (int level = 0; level <= max_level; ++level) {
        if (level > 0) {
            // refine: keep old nodes, add the odd multiples of the new step
            h /= 2;
            for (Big t = h; t <= tmax; t += 2 * h) {
                sum += node_term(t);
                sum += node_term(-t);
            }
        } else {
            for (Big t = h; t <= tmax; t += h) {
                sum += node_term(t);
                sum += node_term(-t);
            }
        }
        Big est = s * h * sum;
        Big scale = abs(est);
        if (scale < 1) scale = 1;
        if (have_prev && abs(est - prev) <= tol * scale && level >= 3) return est;
        prev = est;
        have_prev = true;
    }
    throw DomainError("integrate: no convergence within refinement budget");
}

} // namespace cf
