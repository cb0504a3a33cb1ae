#include "cycleforge/trigring.hpp"

#include "cycleforge/bigfloat.hpp"

namespace cf {

void TrigRat::add_monomial(int a, int b, const QPoly& p) {
    if (p.is_zero()) return;
    if (b >= 2) {
        // sin^2 = 1 - cos^2
        add_monomial(a, b - 2, p);
        add_monomial(a + 2, b - 2, -p);
        return;
    }
    TrigKey k{a, b};
    auto it = num.find(k);
    if (it == num.end()) {
        num.emplace(k, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) num.erase(it);
}

TrigRat TrigRat::of_poly(const QPoly& p) {
    TrigRat x;
    x.add_monomial(0, 0, p);
    return x;
}

TrigRat TrigRat::monomial(int a, int b, const QPoly& p) {
    TrigRat x;
    x.add_monomial(a, b, p);
    return x;
}

TrigRat operator*(const TrigRat& x, const TrigRat& y) {
    TrigRat out;
    out.pole = x.pole + y.pole;
    out.rden = x.rden + y.rden;
    for (const auto& [kx, px] : x.num)
        for (const auto& [ky, py] : y.num) out.add_monomial(kx.a + ky.a, kx.b + ky.b, px * py);
    if (out.is_zero()) out.pole = out.rden = 0;
    return out;
}

TrigRat operator-(const TrigRat& x) {
    TrigRat out = x;
    for (auto& [k, p] : out.num) p = -p;
    return out;
}

TrigRat scale(const TrigRat& x, const Rat& s) {
    if (s == 0) return TrigRat{};
    TrigRat out = x;
    for (auto& [k, p] : out.num) p = p.scale(s);
    return out;
}

TrigRat div_r(const TrigRat& x) {
    TrigRat out = x;
    if (!out.is_zero()) ++out.rden;
    return out;
}

TrigRat shift_half_turn(const TrigRat& x) {
    TrigRat out;
    out.pole = x.pole;
    out.rden = x.rden;
    for (const auto& [k, p] : x.num)
        out.add_monomial(k.a, k.b, (k.a + k.b) % 2 == 0 ? p : -p);
    return out;
}

TrigAlg::TrigAlg(TrigRat base) : base_(std::move(base)) {
    if (base_.pole != 0 || base_.rden != 0 || base_.is_zero())
        throw DomainError("trig algebra: pole base must be a nonzero polynomial element");
    for (const auto& [k, p] : base_.num) base_dr_.add_monomial(k.a, k.b, p.derivative());
}

TrigAlg TrigAlg::reflected() const { return TrigAlg(shift_half_turn(base_)); }

TrigRat TrigAlg::lifted(const TrigRat& x, int pole, int rden) const {
    TrigRat out = x;
    for (int k = x.pole; k < pole; ++k) out = out * base_;
    out.pole = pole;
    if (rden > x.rden) {
        TrigRat shift;
        shift.add_monomial(0, 0, QPoly::monomial(static_cast<std::size_t>(rden - x.rden)));
        out = out * shift;
    }
    out.rden = rden;
    return out;
}

TrigRat TrigAlg::add(const TrigRat& x, const TrigRat& y) const {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    int pole = std::max(x.pole, y.pole);
    int rden = std::max(x.rden, y.rden);
    TrigRat out = lifted(x, pole, rden);
    for (const auto& [k, p] : lifted(y, pole, rden).num) out.add_monomial(k.a, k.b, p);
    if (out.is_zero()) out.pole = out.rden = 0;
    return out;
}

TrigRat TrigAlg::sub(const TrigRat& x, const TrigRat& y) const { return add(x, -y); }

bool TrigAlg::equal(const TrigRat& x, const TrigRat& y) const { return sub(x, y).is_zero(); }

TrigRat TrigAlg::derivative_r(const TrigRat& x) const {
    // d/dr [N / (D^p r^q)] = (N_r D r - p N D_r r - q N D) / (D^{p+1} r^{q+1})
    if (x.is_zero()) return {};
    TrigRat n = x; // the numerator alone
    n.pole = n.rden = 0;
    TrigRat ndr;
    for (const auto& [k, p] : n.num) ndr.add_monomial(k.a, k.b, p.derivative());
    TrigRat rfac = TrigRat::of_poly(QPoly::x());
    TrigRat acc = ndr * base_ * rfac;
    for (const auto& [k, p] : scale(n * base_dr_ * rfac, Rat(-x.pole)).num)
        acc.add_monomial(k.a, k.b, p);
    for (const auto& [k, p] : scale(n * base_, Rat(-x.rden)).num) acc.add_monomial(k.a, k.b, p);
    if (acc.is_zero()) return {};
    acc.pole = x.pole + 1;
    acc.rden = x.rden + 1;
    return acc;
}

Big TrigAlg::eval(const TrigRat& x, const Big& r, const Big& psi) const {
    Big c = cos(psi), s = sin(psi);
    auto poly_sum = [&](const TrigRat& e) -> Big {
        Big acc(0);
        for (const auto& [k, p] : e.num) {
            Big v = p.eval_with(r, [](const Rat& q) { return to_big(q); });
            v *= pow(c, k.a);
            if (k.b) v *= s;
            acc += v;
        }
        return acc;
    };
    Big val = poly_sum(x);
    if (x.pole != 0) val /= pow(poly_sum(base_), x.pole);
    if (x.rden != 0) val /= pow(r, x.rden);
    return val;
}

} // namespace cf
