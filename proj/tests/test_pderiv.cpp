#include "diffpow/pderiv.hpp"

#include <doctest.h>

#include <random>

using namespace diffpow;

namespace {

const Context kX({"x"});
const Context kXY({"x", "y"});
const Domain kZ = Domain::ZZ();

Poly P(const char* s, const Context& ctx = kX, const Domain& dom = kZ) {
    return parse_poly(s, ctx, dom);
}

Poly random_poly(std::mt19937_64& eng, const Context& ctx, int max_deg) {
    auto pick = [&](int lo, int hi) { return lo + (int)(eng() % (uint64_t)(hi - lo + 1)); };
    std::vector<Term> ts;
    for (int t = 0, n = pick(0, 4); t < n; ++t) {
        std::vector<int> e(ctx.size(), 0);
        int left = pick(0, max_deg);
        for (size_t i = 0; i < ctx.size(); ++i) {
            e[i] = pick(0, left);
            left -= e[i];
        }
        ts.push_back({mpq_class(pick(-9, 9)), Monomial(e)});
    }
    return Poly::from_terms(ctx, kZ, ts);
}

}  // namespace

TEST_CASE("lift construction validates the Frobenius congruence") {
    CHECK_NOTHROW(FrobeniusLift(kX, 2, {P("x^2")}));
    CHECK_NOTHROW(FrobeniusLift(kX, 2, {P("x^2 + 2*x")}));
    CHECK_NOTHROW(FrobeniusLift(kX, 2, {P("x^2 + 2")}));
    CHECK_THROWS_AS(FrobeniusLift(kX, 2, {P("x^2 + 1")}), InputError);
    CHECK_THROWS_AS(FrobeniusLift(kX, 2, {P("x^3")}), InputError);
    CHECK_THROWS_AS(FrobeniusLift(kX, 4, {P("x^4")}), InputError);  // 4 is not prime
    CHECK_THROWS_AS(FrobeniusLift(kXY, 2, {P("x^2", kXY)}), InputError);  // missing image
    CHECK_THROWS_AS(FrobeniusLift(kX, 2, {P("x^2", kX, Domain::QQ())}), InputError);

    FrobeniusLift c = FrobeniusLift::canonical(kXY, 3);
    CHECK(c.images()[0] == P("x^3", kXY));
    CHECK(c.images()[1] == P("y^3", kXY));
    CHECK(c.str() == "x -> x^3, y -> y^3");
}

TEST_CASE("lift application is the substitution homomorphism") {
    FrobeniusLift phi = FrobeniusLift::canonical(kXY, 2);
    CHECK(phi.apply(P("x + 2", kXY)) == P("x^2 + 2", kXY));
    CHECK(phi.apply(P("7", kXY)) == P("7", kXY));

    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Poly f = random_poly(eng, kXY, 3);
        Poly g = random_poly(eng, kXY, 3);
        CHECK(phi.apply(f * g) == phi.apply(f) * phi.apply(g));
        CHECK(phi.apply(f + g) == phi.apply(f) + phi.apply(g));
        // The defining congruence phi(f) == f^p mod p extends to every f.
        Poly residue = phi.apply(f) - f * f;
        bool all_even = true;
        for (const Term& t : residue.terms())
            if (t.coeff.get_num() % 2 != 0) all_even = false;
        CHECK(all_even);
    }
}

TEST_CASE("derivative values under the canonical lift at p = 2") {
    PDerivation d(FrobeniusLift::canonical(kXY, 2));
    CHECK(d.derive(P("x + 2", kXY)) == P("-2*x - 1", kXY));
    CHECK(d.derive(P("y + 2", kXY)) == P("-2*y - 1", kXY));
    CHECK(d.derive(P("2", kXY)) == P("-1", kXY));
    CHECK(d.derive(P("x", kXY)).is_zero());
    CHECK(d.derive(P("y", kXY)).is_zero());
    CHECK(d.derive(P("1", kXY)).is_zero());
    CHECK(d.derive(P("2*x", kXY)) == P("-x^2", kXY));

    PDerivation shifted(FrobeniusLift(kX, 2, {P("x^2 + 2*x")}));
    CHECK(shifted.derive(P("x")) == P("x"));
    CHECK(shifted.derive(P("2")) == P("-1"));  // constants see only the Fermat quotient
}

TEST_CASE("iteration composes the derivation") {
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    Poly f = P("x^3 - 2*x + 5");
    CHECK(d.iterate(0, f) == f);
    CHECK(d.iterate(1, f) == d.derive(f));
    CHECK(d.iterate(2, P("4")) == P("-21"));  // delta(4) = -6, delta(-6) = -21
    CHECK(d.iterate(2, P("2*x")) == P("-x^4"));
    CHECK_THROWS_AS(d.iterate(-1, f), InputError);
}

TEST_CASE("Fermat quotient values and valuations") {
    CHECK(fermat_quotient(2, 2) == -1);
    CHECK(fermat_quotient(0, 5) == 0);
    CHECK(fermat_quotient(1, 3) == 0);
    CHECK(fermat_quotient(-1, 2) == -1);  // (-1 - 1)/2

    for (long p : {2L, 3L, 5L}) {
        mpz_class P_(p);
        for (int n = 1; n <= 6; ++n) {
            mpz_class pn, expect, lo, hi;
            mpz_pow_ui(pn.get_mpz_t(), P_.get_mpz_t(), n);
            mpz_pow_ui(lo.get_mpz_t(), P_.get_mpz_t(), n - 1);
            mpz_pow_ui(hi.get_mpz_t(), P_.get_mpz_t(), (unsigned long)p * n - 1);
            expect = lo - hi;
            mpz_class got = fermat_quotient(pn, P_);
            CHECK(got == expect);
            CHECK(mpz_divisible_p(got.get_mpz_t(), lo.get_mpz_t()));
            mpz_class pn_down = lo * p;
            CHECK(!mpz_divisible_p(got.get_mpz_t(), pn_down.get_mpz_t()));
        }
    }
}

TEST_CASE("the additivity defect C_p") {
    CHECK(cp(P("x", kXY), P("y", kXY), 2) == P("-x*y", kXY));
    CHECK(cp(P("x^2 - 3"), Poly::zero(kX, kZ), 5).is_zero());
    CHECK(cp(P("1"), P("1"), 2) == P("-1"));

    std::mt19937_64 eng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Poly a = random_poly(eng, kXY, 2);
        Poly b = random_poly(eng, kXY, 2);
        if (a.is_zero() || b.is_zero()) continue;
        for (long p : {2L, 3L}) {
            Poly c = cp(a, b, p);
            CHECK(contains(Ideal(kXY, kZ, {a}), c));
            CHECK(contains(Ideal(kXY, kZ, {b}), c));
            // Expansion: C_p(a, b) = -sum_{i=1}^{p-1} binom(p,i)/p a^i b^(p-i).
            Poly expanded = Poly::zero(kXY, kZ);
            for (long i = 1; i < p; ++i) {
                mpz_class coef = binomial((int)p, (int)i) / p;
                expanded = expanded - (a.pow((unsigned)i) * b.pow((unsigned)(p - i))).mul_scalar(coef);
            }
            CHECK(c == expanded);
        }
    }
}

TEST_CASE("axiom verification over random samples") {
    PDerivation d(FrobeniusLift::canonical(kXY, 2));
    std::mt19937_64 eng(17);
    std::vector<std::pair<Poly, Poly>> samples;
    for (int trial = 0; trial < 50; ++trial)
        samples.emplace_back(random_poly(eng, kXY, 3), random_poly(eng, kXY, 3));
    AxiomReport report = verify_axioms(d, samples);
    CHECK(report.ok());
    CHECK(report.pairs_checked == 50);

    // The sum rule residual on (x, y) is exactly C_p(x, y).
    Poly x = P("x", kXY), y = P("y", kXY);
    CHECK(d.derive(x + y) - d.derive(x) - d.derive(y) == cp(x, y, 2));
}

TEST_CASE("p-power membership levels match the p-adic valuation") {
    Ideal two(kX, kZ, {P("2")});
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    for (int k = 1; k <= 3; ++k) {
        Poly f = Poly::constant(kX, kZ, mpz_class(1) << k);  // 2^k
        for (int n = 1; n <= 4; ++n) {
            CHECK(pder_power_membership(two, n, d, f) == (k >= n));
        }
    }
}

TEST_CASE("membership at level 1 is plain ideal membership") {
    Ideal Q(kX, kZ, {P("2"), P("x")});
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    std::mt19937_64 eng(19);
    for (int trial = 0; trial < 20; ++trial) {
        Poly f = random_poly(eng, kX, 4);
        CHECK(pder_power_membership(Q, 1, d, f) == contains(Q, f));
    }
}

TEST_CASE("a primary ideal without p fails to absorb its own square") {
    // a = (4, x+2, y+2) is (2,x,y)-primary but 2 is not in a; the square of
    // the ideal escapes the level-2 p-power through delta(f)delta(g).
    Ideal a(kXY, kZ, {P("4", kXY), P("x + 2", kXY), P("y + 2", kXY)});
    PDerivation d(FrobeniusLift::canonical(kXY, 2));
    Poly f = P("x + 2", kXY), g = P("y + 2", kXY);
    CHECK(contains(ideal_power(a, 2), f * g));
    CHECK(pder_power_membership(a, 1, d, f * g));
    CHECK(!pder_power_membership(a, 2, d, f * g));
    // The failing witness is delta(fg) itself.
    CHECK(!contains(a, d.derive(f * g)));
    // Against the radical Q = (2, x, y), which does contain p, level 2 holds.
    Ideal Q(kXY, kZ, {P("2", kXY), P("x", kXY), P("y", kXY)});
    CHECK(pder_power_membership(Q, 2, d, f * g));
}

TEST_CASE("delta maps the n-th power into the (n-1)-st when p lies inside") {
    std::vector<Ideal> ideals = {
        Ideal(kX, kZ, {P("2"), P("x")}),
        Ideal(kX, kZ, {P("2"), P("x^2 + x + 1")}),
    };
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    for (const Ideal& a : ideals) {
        for (int n = 2; n <= 3; ++n) {
            Ideal an = ideal_power(a, n);
            Ideal lower = ideal_power(a, n - 1);
            // Sample a^n by random combinations of products of n generators.
            std::mt19937_64 eng(29);
            std::vector<Poly> prods{Poly::constant(kX, kZ, 1)};
            for (int k = 0; k < n; ++k) {
                std::vector<Poly> next;
                for (const Poly& q : prods)
                    for (const Poly& g : a.generators()) next.push_back(q * g);
                prods = next;
            }
            for (const Poly& q : prods) {
                CHECK(contains(lower, d.derive(q)));
                Poly r = random_poly(eng, kX, 2);
                CHECK(contains(lower, d.derive(q * r)));
            }
            // And sums of such elements, where C_p enters.
            CHECK(contains(lower, d.derive(prods[0] + prods.back())));
        }
    }
}

TEST_CASE("levels add across products") {
    Ideal Q(kX, kZ, {P("2"), P("x")});
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    auto level = [&](const Poly& f) {
        int lv = 0;
        while (lv < 6 && pder_power_membership(Q, lv + 1, d, f)) ++lv;
        return lv;
    };
    std::vector<Poly> witnesses = {P("4"), P("2*x"), P("x^2"), P("2"), P("8*x")};
    for (const Poly& f : witnesses) {
        for (const Poly& g : witnesses) {
            int ls = level(f), lt = level(g), lp = level(f * g);
            CHECK(lp >= std::min(ls + lt, 6));
        }
    }
    CHECK(level(P("4")) == 2);
    CHECK(level(P("2")) == 1);
    // x^2 has delta(x^2) = 0, so it sits at every level.
    CHECK(level(P("x^2")) == 6);
}

TEST_CASE("p-differential powers are closed under addition and scaling") {
    Ideal Q(kX, kZ, {P("2"), P("x")});
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    std::mt19937_64 eng(31);
    std::vector<Poly> level2 = {P("4"), P("x^2"), P("2*x"), P("x^2 + 4")};
    for (const Poly& f : level2) REQUIRE(pder_power_membership(Q, 2, d, f));
    for (const Poly& f : level2) {
        for (const Poly& g : level2) CHECK(pder_power_membership(Q, 2, d, f + g));
        for (int trial = 0; trial < 5; ++trial) {
            Poly r = random_poly(eng, kX, 2);
            CHECK(pder_power_membership(Q, 2, d, f * r));
        }
    }
}

TEST_CASE("descending chain of p-differential powers") {
    Ideal Q(kX, kZ, {P("2"), P("x")});
    PDerivation d(FrobeniusLift::canonical(kX, 2));
    std::mt19937_64 eng(37);
    for (int trial = 0; trial < 25; ++trial) {
        Poly f = random_poly(eng, kX, 3);
        for (int n = 1; n <= 3; ++n)
            if (pder_power_membership(Q, n + 1, d, f)) CHECK(pder_power_membership(Q, n, d, f));
    }
}
