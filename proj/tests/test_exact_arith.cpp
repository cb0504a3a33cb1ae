#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycleforge/bigfloat.hpp"
#include "cycleforge/enclosure.hpp"

#include <random>

using namespace cf;

namespace {

std::mt19937_64 rng(20240817u);

Rat rand_rat(long num_lim = 1000000, long den_lim = 1000000) {
    std::uniform_int_distribution<long> num(-num_lim, num_lim);
    std::uniform_int_distribution<long> den(1, den_lim);
    return Rat(num(rng), den(rng));
}

Rat rand_nonzero_rat() {
    for (;;) {
        Rat q = rand_rat();
        if (q != 0) return q;
    }
}

// Random sign-definite enclosure with an uninterpreted label.
ConstEnclosure rand_enclosure() {
    Rat a = rand_nonzero_rat();
    Rat w = abs_rat(rand_rat()) + Rat(1, 1000000);
    if (a > 0) return make_enclosure("c", a, a + w);
    return make_enclosure("c", a - w, a);
}

Rat sample_in(const Rat& lo, const Rat& hi) {
    std::uniform_int_distribution<long> t(0, 1000000);
    return lo + (hi - lo) * Rat(t(rng), 1000000);
}

} // namespace

TEST_CASE("rational parse and print round-trip") {
    CHECK_EQ(*parse_rat("3/4"), Rat(3, 4));
    CHECK_EQ(*parse_rat("-6/8"), Rat(-3, 4));
    CHECK_EQ(*parse_rat("17"), Rat(17));
    CHECK_EQ(*parse_rat("+5/10"), Rat(1, 2));
    CHECK_FALSE(parse_rat("1/0").has_value());
    CHECK_FALSE(parse_rat("a/b").has_value());
    CHECK_FALSE(parse_rat("").has_value());
    CHECK_FALSE(parse_rat("1/2/3").has_value());
    CHECK_EQ(rat_str(Rat(-3, 4)), "-3/4");
    CHECK_EQ(rat_str(Rat(7)), "7");
    for (int i = 0; i < 1000; ++i) {
        Rat q = rand_rat();
        CHECK_EQ(*parse_rat(rat_str(q)), q);
    }
}

TEST_CASE("rational arithmetic round-trips exactly") {
    for (int i = 0; i < 1000; ++i) {
        Rat a = rand_rat(), b = rand_nonzero_rat();
        CHECK_EQ((a + b) - b, a);
        CHECK_EQ((a * b) / b, a);
    }
    CHECK_EQ(pow_rat(Rat(2, 3), 5), Rat(32, 243));
    CHECK_EQ(pow_rat(Rat(2, 3), -2), Rat(9, 4));
    CHECK_EQ(pow_rat(Rat(5), 0), Rat(1));
    CHECK_THROWS_AS(pow_rat(Rat(0), -1), DomainError);
}

TEST_CASE("sigma bounds case split") {
    ConstEnclosure p = make_enclosure("c", Rat(1, 2), Rat(3, 4));
    SignedBound b = sigma_bounds(Rat(2), p);
    CHECK_EQ(b.lower, Rat(1));
    CHECK_EQ(b.upper, Rat(3, 2));

    b = sigma_bounds(Rat(-5), sqrt3_coarse());
    CHECK_EQ(b.lower, Rat(-35, 4));
    CHECK_EQ(b.upper, Rat(-25, 3));

    b = sigma_bounds(Rat(1), pi_coarse());
    CHECK_EQ(b.lower, Rat(333, 106));
    CHECK_EQ(b.upper, Rat(355, 113));
}

TEST_CASE("sigma rejects the uncovered cases") {
    CHECK_THROWS_AS(sigma_bounds(Rat(0), pi_coarse()), DomainError);
    // Bypass make_enclosure to hit sigma's own guard.
    ConstEnclosure straddling{"bad", Rat(-1), Rat(1)};
    CHECK_THROWS_AS(sigma_bounds(Rat(1), straddling), DomainError);
}

TEST_CASE("chi bounds three-case table") {
    SignedBound q12(Rat(1), Rat(2));
    SignedBound b = chi_bounds(q12, {2}, Rat(1, 2));
    CHECK_EQ(b.lower, Rat(0));
    CHECK_EQ(b.upper, Rat(1, 2));

    b = chi_bounds(q12, {1, 2}, Rat(1, 2));
    CHECK_EQ(b.lower, Rat(-1, 4));
    CHECK_EQ(b.upper, Rat(1, 4));

    b = chi_bounds(SignedBound(Rat(-3), Rat(-1)), {2}, Rat(1, 3));
    CHECK_EQ(b.lower, Rat(-1, 3));
    CHECK_EQ(b.upper, Rat(0));

    // Degree zero returns the coefficient bound itself, sign-definite or not.
    b = chi_bounds(SignedBound(Rat(-1), Rat(2)), {0, 0}, Rat(1, 2));
    CHECK_EQ(b.lower, Rat(-1));
    CHECK_EQ(b.upper, Rat(2));

    // Negative coefficient with an odd exponent.
    b = chi_bounds(SignedBound(Rat(-3), Rat(-2)), {1}, Rat(1, 2));
    CHECK_EQ(b.lower, Rat(-3, 2));
    CHECK_EQ(b.upper, Rat(3, 2));
}

TEST_CASE("chi rejects sign-indefinite coefficients and bad boxes") {
    CHECK_THROWS_AS(chi_bounds(SignedBound(Rat(-1), Rat(1)), {1}, Rat(1, 2)), DomainError);
    CHECK_THROWS_AS(chi_bounds(SignedBound(Rat(1), Rat(2)), {1}, Rat(0)), DomainError);
    CHECK_THROWS_AS(chi_bounds(SignedBound(Rat(1), Rat(2)), {1}, Rat(-1)), DomainError);
}

TEST_CASE("enclosure powers use endpoint powers") {
    ConstEnclosure p2 = enclose_power(pi_coarse(), 2);
    CHECK_EQ(p2.lo, Rat(110889, 11236));
    CHECK_EQ(p2.hi, Rat(126025, 12769));
    CHECK_EQ(p2.label, "pi^2");

    ConstEnclosure p1 = enclose_power(pi_coarse(), 1);
    CHECK_EQ(p1.lo, pi_coarse().lo);
    CHECK_EQ(p1.hi, pi_coarse().hi);

    ConstEnclosure p3 = enclose_power(pi_coarse(), 3);
    CHECK_EQ(p3.lo, pow_rat(Rat(333, 106), 3));
    CHECK_EQ(p3.hi, pow_rat(Rat(355, 113), 3));

    // Exponents compose through repeated powering, and each result
    // re-passes the construction-time truth check.
    ConstEnclosure p6 = enclose_power(p2, 3);
    CHECK_EQ(p6.label, "pi^6");
    CHECK_EQ(p6.lo, pow_rat(Rat(333, 106), 6));

    ConstEnclosure negative{"neg", Rat(-2), Rat(-1)};
    CHECK_THROWS_AS(enclose_power(negative, 2), DomainError);
}

TEST_CASE("construction-time truth containment") {
    CHECK_NOTHROW(make_enclosure("pi", Rat(3), Rat(22, 7)));
    CHECK_NOTHROW(make_enclosure("sqrt3", Rat(12, 7), Rat(26, 15)));
    CHECK_NOTHROW(make_enclosure("pi^2", Rat(9), Rat(10)));
    // 3.14 < pi: upper endpoint excludes the true value.
    CHECK_THROWS_AS(make_enclosure("pi", Rat(333, 106), Rat(314, 100)), DomainError);
    CHECK_THROWS_AS(make_enclosure("sqrt3", Rat(7, 4), Rat(9, 5)), DomainError);
    // Unlabeled constants skip the oracle but still need a definite sign.
    CHECK_NOTHROW(make_enclosure("mystery", Rat(5), Rat(6)));
    CHECK_THROWS_AS(make_enclosure("mystery", Rat(-1), Rat(1)), DomainError);
    CHECK_THROWS_AS(make_enclosure("mystery", Rat(2), Rat(1)), DomainError);
}

TEST_CASE("sigma soundness on random samples") {
    for (int i = 0; i < 10000; ++i) {
        Rat q = rand_nonzero_rat();
        ConstEnclosure p = rand_enclosure();
        Rat pstar = sample_in(p.lo, p.hi);
        SignedBound b = sigma_bounds(q, p);
        CHECK_LE(b.lower, q * pstar);
        CHECK_LE(q * pstar, b.upper);
    }
}

TEST_CASE("sigma soundness against 100-digit constants") {
    PrecisionGuard guard(100);
    Big truths[2] = {big_pi(), big_sqrt3()};
    const ConstEnclosure* encl[4] = {&pi_coarse(), &pi_fine(), &sqrt3_coarse(),
                                     &sqrt3_fine()};
    for (int e = 0; e < 4; ++e) {
        Big truth = truths[e / 2];
        for (int i = 0; i < 200; ++i) {
            Rat q = rand_nonzero_rat();
            SignedBound b = sigma_bounds(q, *encl[e]);
            Big qp = to_big(q) * truth;
            CHECK_LE(to_big(b.lower), qp);
            CHECK_LE(qp, to_big(b.upper));
        }
    }
}

TEST_CASE("chi soundness on random samples") {
    std::uniform_int_distribution<int> dim(1, 3), expo(0, 3);
    for (int i = 0; i < 10000; ++i) {
        int n = dim(rng);
        std::vector<unsigned> exps;
        for (int j = 0; j < n; ++j) exps.push_back(static_cast<unsigned>(expo(rng)));
        Rat h = abs_rat(rand_nonzero_rat());
        Rat qa = rand_nonzero_rat();
        Rat qb = qa + abs_rat(rand_rat()) * (qa > 0 ? 1 : -1);
        SignedBound q(std::min(qa, qb), std::max(qa, qb));
        SignedBound b = chi_bounds(q, exps, h);
        Rat qstar = sample_in(q.lower, q.upper);
        Rat mono(1);
        for (int j = 0; j < n; ++j)
            mono *= pow_rat(sample_in(-h, h), static_cast<long>(exps[j]));
        Rat val = qstar * mono;
        CHECK_LE(b.lower, val);
        CHECK_LE(val, b.upper);
    }
}

TEST_CASE("power enclosures contain the 100-digit truth") {
    PrecisionGuard guard(100);
    Big pi100 = big_pi();
    for (unsigned m = 1; m <= 3; ++m) {
        for (unsigned n = 1; n <= 3; ++n) {
            ConstEnclosure pm = enclose_power(pi_coarse(), m);
            ConstEnclosure pn = enclose_power(pi_coarse(), n);
            ConstEnclosure pmn = enclose_power(pi_coarse(), m + n);
            Big truth = pow(pi100, static_cast<int>(m + n));
            CHECK_LE(to_big(pmn.lo), truth);
            CHECK_LE(truth, to_big(pmn.hi));
            // The interval product also contains it, though the two
            // enclosures need not nest.
            CHECK_LE(to_big(pm.lo * pn.lo), truth);
            CHECK_LE(truth, to_big(pm.hi * pn.hi));
        }
    }
}

TEST_CASE("constants table loads and matches the shipped values") {
    auto table = load_constants(std::string(CF_DATA_DIR) + "/constants.tbl");
    REQUIRE_EQ(table.size(), 4);
    CHECK_EQ(table.at("pi_coarse").lo, pi_coarse().lo);
    CHECK_EQ(table.at("pi_coarse").hi, pi_coarse().hi);
    CHECK_EQ(table.at("sqrt3_coarse").lo, sqrt3_coarse().lo);
    CHECK_EQ(table.at("pi_fine").lo, pi_fine().lo);
    CHECK_EQ(table.at("pi_fine").hi, pi_fine().hi);
    CHECK_EQ(table.at("sqrt3_fine").hi, sqrt3_fine().hi);
    // The fine pair is much tighter than the coarse pair: ~20 digits
    // for pi, ~11 for sqrt3.
    CHECK_LT(pi_fine().hi - pi_fine().lo, Rat(1, Int("10000000000000000000")));
    CHECK_LT(sqrt3_fine().hi - sqrt3_fine().lo, Rat(1, Int("100000000000")));
}
