#include "cycleforge/specials.hpp"

#include "cycleforge/quadrature.hpp"
#include "cycleforge/rational.hpp"

namespace cf {

namespace {

void require_inner(const Big& r) {
    if (abs(r) >= 1) throw DomainError("special function: |r| must be < 1");
}

Big log1p_big(const Big& x) {
    Big out(0);
    mpfr_log1p(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
}

} // namespace

Big phi_theta(const Big& r, const Big& theta) {
    require_inner(r);
    Big pi = big_pi();
    Big t = theta;
    if (t > pi || t < -pi) t -= 2 * pi * round(t / (2 * pi));
    // tan(t/2) overflows harmlessly in mpfr near the endpoints; the
    // atan collapses it back to +-pi/2
    Big k = sqrt((1 - r) / (1 + r));
    return (t - 2 * atan(k * tan(t / 2))) / sqrt(1 - r * r);
}

Big lambda_theta(const Big& r, const Big& theta) {
    Big arg = r * cos(theta);
    if (arg <= -1) throw DomainError("lambda: 1 + r cos(theta) must be positive");
    return log1p_big(arg);
}

Big special_L(const Big& r) {
    require_inner(r);
    return log1p_big(-r) - log1p_big(r);
}

Big special_lambda00(const Big& r) {
    require_inner(r);
    // stable rewrite of -pi log(2(1-w)/r^2) via (1-w)(1+w) = r^2
    Big w = sqrt(1 - r * r);
    return big_pi() * (log1p_big(w) - log(Big(2)));
}

Big special_lambda10(const Big& r) {
    require_inner(r);
    Big w = sqrt(1 - r * r);
    return (big_pi() * log(1 - r * r) - special_lambda00(r)) / w;
}

Big special_phi00(const Big& r, const Big& tol) {
    require_inner(r);
    return integrate([&](const Big& th) { return phi_theta(r, th); }, Big(0), big_pi(), tol);
}

Big eval_special(const SpecialFnValue& f, unsigned digits) {
    PrecisionGuard guard(digits + 15);
    Big r = f.r, theta = f.theta;
    r.precision(Big::default_precision());
    theta.precision(Big::default_precision());
    Big out;
    switch (f.kind) {
        case SpecialKind::Phi: out = phi_theta(r, theta); break;
        case SpecialKind::Lambda: out = lambda_theta(r, theta); break;
        case SpecialKind::Phi00: out = special_phi00(r, pow(Big(10), -static_cast<int>(digits))); break;
        case SpecialKind::Lambda00: out = special_lambda00(r); break;
        case SpecialKind::Lambda10: out = special_lambda10(r); break;
        case SpecialKind::LFn: out = special_L(r); break;
    }
    out.precision(static_cast<unsigned>(digits));
    return out;
}

} // namespace cf
