#include <functional>
#include <random>

#include "diffpow/suites.hpp"

namespace diffpow {

namespace {

// Every suite freezes at least one expected value; `corrupt` swaps it for a
// wrong one so the harness can prove it reports honest failures.

Poly P(const std::string& s, const Context& ctx, const Domain& dom = Domain::ZZ()) {
    return parse_poly(s, ctx, dom);
}

void line(CheckReport& r, const std::string& name, bool pass, const std::string& detail = "") {
    r.checks.push_back({name, pass, detail});
}

// --- (4, x+2, y+2): the opening computation -------------------------------

CheckReport suite_base_example(bool corrupt) {
    CheckReport r{"base-example", {}};
    Context xy({"x", "y"});
    Domain zz = Domain::ZZ();
    PDerivation d(FrobeniusLift::canonical(xy, 2));

    Poly f = P("x + 2", xy), g = P("y + 2", xy);
    Poly expected_d2 = Poly::constant(xy, zz, corrupt ? -2 : -1);

    line(r, "delta(x+2) = -1 - 2x", d.derive(f) == P("-1 - 2*x", xy), d.derive(f).str());
    line(r, "delta(y+2) = -1 - 2y", d.derive(g) == P("-1 - 2*y", xy), d.derive(g).str());
    line(r, "delta(2) = -1", d.derive(P("2", xy)) == expected_d2, d.derive(P("2", xy)).str());
    line(r, "delta(x) = 0", d.derive(P("x", xy)).is_zero(), "");
    line(r, "delta(y) = 0", d.derive(P("y", xy)).is_zero(), "");

    Ideal a(xy, zz, {P("4", xy), f, g});
    Poly fg = f * g;
    line(r, "fg lies in the square of (4, x+2, y+2)", contains(ideal_power(a, 2), fg), fg.str());
    line(r, "fg fails level-2 p-derivation membership", !pder_power_membership(a, 2, d, fg), "");
    Poly dfg = d.derive(fg);
    line(r, "the obstruction: delta(fg) escapes the ideal", !contains(a, dfg), dfg.str());
    return r;
}

// --- Fermat quotient valuations -------------------------------------------

CheckReport suite_fermat_valuations(bool corrupt) {
    CheckReport r{"fermat-valuations", {}};
    for (long p : {2L, 3L, 5L}) {
        bool all = true;
        std::string detail;
        for (int n = 1; n <= 6; ++n) {
            mpz_class pn, expected, pn1, pnp;
            mpz_pow_ui(pn.get_mpz_t(), mpz_class(p).get_mpz_t(), n);
            mpz_pow_ui(pn1.get_mpz_t(), mpz_class(p).get_mpz_t(), n - 1);
            mpz_pow_ui(pnp.get_mpz_t(), mpz_class(p).get_mpz_t(),
                       static_cast<unsigned long>(p) * n - 1);
            expected = pn1 - pnp;
            if (corrupt) expected += 1;
            mpz_class got = fermat_quotient(pn, p);
            bool okay = got == expected && mpz_divisible_p(got.get_mpz_t(), pn1.get_mpz_t()) &&
                        !mpz_divisible_p(got.get_mpz_t(), pn.get_mpz_t());
            if (!okay && detail.empty())
                detail = "n = " + std::to_string(n) + ": got " + got.get_str();
            all = all && okay;
        }
        line(r, "delta(p^n) = p^(n-1) - p^(pn-1), valuation exactly n-1, p = " + std::to_string(p),
             all, detail);
    }
    return r;
}

// --- differential powers stagnate at the char ------------------------------

CheckReport suite_stagnation(bool corrupt) {
    Context x1({"x"});
    Domain zz = Domain::ZZ();
    Ideal Q(x1, zz, {P("2", x1), P("x", x1)});
    CheckReport r = diff_stagnation_check(Q, 2, 5);
    r.title = "stagnation";
    // frozen contrast value: at level 2 the symbolic verdict is false
    bool expected_sym2 = corrupt;
    line(r, "frozen: symbolic verdict for 2 at level 2",
         symbolic_membership(Q, 2, P("2", x1)) == expected_sym2, "");
    return r;
}

// --- the order of operations in mixed compositions -------------------------

CheckReport suite_px_asymmetry(bool corrupt) {
    CheckReport r{"px-asymmetry", {}};
    Context x1({"x"});
    Domain zz = Domain::ZZ();
    Ideal Q(x1, zz, {P("2", x1), P("x", x1)});
    PDerivation d(FrobeniusLift::canonical(x1, 2));
    Poly f = P("2*x", x1);
    Monomial dx({1});

    line(r, "second derivative of 2x stays in Q", contains(Q, apply_D(Monomial({2}), f)), "");
    Poly a = apply_D(dx, d.derive(f));
    line(r, "d/dx after delta keeps 2x in Q", a == P("-2*x", x1) && contains(Q, a), a.str());
    Poly b = d.iterate(2, f);
    line(r, "delta^2 keeps 2x in Q", b == P("-x^4", x1) && contains(Q, b), b.str());

    Poly expected = Poly::constant(x1, zz, corrupt ? 1 : -1);
    Poly c = d.derive(apply_D(dx, f));
    line(r, "delta after d/dx sends 2x to -1, outside Q", c == expected && !contains(Q, c),
         c.str());

    PowerQuery q{Q, PrimeCertificate{}, 3, mpz_class(2), d, std::nullopt, std::nullopt};
    auto w = mixed_power_violation(q, f);
    line(r, "mixed level 3 rejects 2x with witness delta after D_(1)",
         w && w->s == 1 && w->alpha == dx, w ? w->value.str() : "no witness");
    line(r, "symbolic level 3 rejects 2x too", !symbolic_membership(Q, 3, f), "");
    line(r, "both notions admit 2x at level 2",
         symbolic_membership(Q, 2, f) && mixed_power_membership(
             PowerQuery{Q, PrimeCertificate{}, 2, mpz_class(2), d, std::nullopt, std::nullopt}, f),
         "");
    return r;
}

// --- symbolic membership through a quotient relation -----------------------

CheckReport suite_quotient(bool corrupt) {
    CheckReport r{"quotient-y2-xz", {}};
    Context xyz({"x", "y", "z"});
    Domain zz = Domain::ZZ();
    Ideal Q(xyz, zz, {P("2", xyz), P("x", xyz), P("y", xyz)});
    Ideal rel(xyz, zz, {P("y^2 - x*z", xyz)});
    Poly x = P("x", xyz);

    line(r, "x enters the second symbolic power modulo y^2 = xz",
         symbolic_membership_quotient(Q, rel, 2, x), "x z = y^2 mod the relation, z outside Q");
    bool expected_in_square = corrupt;
    line(r, "x stays outside Q^2 + (y^2 - xz)",
         contains(ideal_sum(ideal_power(Q, 2), rel), x) == expected_in_square, "");
    line(r, "without the relation x misses the second symbolic power",
         !symbolic_membership(Q, 2, x), "");
    line(r, "y^2 enters with or without the relation",
         symbolic_membership_quotient(Q, rel, 2, P("y^2", xyz)) &&
             symbolic_membership(Q, 2, P("y^2", xyz)),
         "");
    return r;
}

// --- inseparable residue extension gap -------------------------------------

CheckReport suite_separability(bool corrupt) {
    CheckReport r = separability_counterexample_check();
    r.title = "separability-x2-t";
    Context ctx({"t", "x"});
    FrobeniusLift lift(ctx, 2, {P("2*x^2*t - t^2", ctx), P("x^2", ctx)});
    Poly dw = PDerivation(lift).derive(P("x^2 - t", ctx));
    std::string expected = corrupt ? "x" : "0";
    line(r, "frozen: delta(x^2 - t) prints as '" + expected + "'", dw.str() == expected, dw.str());
    return r;
}

// --- equivalence of symbolic and differential powers away from the char ----

CheckReport suite_equiv_diff(bool corrupt, uint64_t seed) {
    CheckReport r{"thm-equivalence-diff", {}};
    Domain zz = Domain::ZZ();

    Context xy({"x", "y"});
    Ideal Q1(xy, zz, {P("x - 2", xy), P("y - 3", xy)});
    Context x1({"x"});
    Ideal Q2(x1, zz, {P("x^2 + 1", x1)});

    struct Inst {
        Ideal Q;
        PrimeCertificate cert;
        std::string label;
    };
    std::vector<Inst> instances = {
        {Q1, PrimeCertificate{PrimeCertificate::Kind::LinearKernel}, "(x-2, y-3) in Z[x,y]"},
        {Q2, PrimeCertificate{PrimeCertificate::Kind::PrincipalIrreducibleOverQ},
         "(x^2+1) in Z[x]"},
    };
    for (const Inst& inst : instances) {
        std::vector<Poly> corpus = standard_corpus(inst.Q, 4, 3, seed);
        for (int n = 1; n <= 3; ++n) {
            EquivalenceReport rep = diff_symbolic_equivalence(inst.Q, inst.cert, n, corpus);
            size_t expected_dis = corrupt ? 1 : 0;
            line(r, inst.label + ", n = " + std::to_string(n),
                 rep.disagreements() == expected_dis,
                 std::to_string(rep.agreements()) + "/" + std::to_string(rep.samples.size()) +
                     " agree");
        }
    }
    return r;
}

// --- equivalence of symbolic and mixed powers at the char ------------------

CheckReport suite_equiv_mixed(bool corrupt, uint64_t seed, bool include_slow) {
    CheckReport r{"thm-equivalence-mixed", {}};
    Domain zz = Domain::ZZ();
    Context x1({"x"});
    Context xy({"x", "y"});

    struct Inst {
        Ideal Q;
        PrimeCertificate cert;
        mpz_class p;
        std::string label;
    };
    std::vector<Inst> instances = {
        {Ideal(x1, zz, {P("2", x1), P("x", x1)}),
         PrimeCertificate{PrimeCertificate::Kind::LinearKernel}, 2, "(2, x) in Z[x]"},
        {Ideal(x1, zz, {P("2", x1), P("x^2 + x + 1", x1)}),
         PrimeCertificate{PrimeCertificate::Kind::PPlusIrreducibleUnivariate}, 2,
         "(2, x^2+x+1) in Z[x]"},
        {Ideal(xy, zz, {P("3", xy), P("x", xy)}),
         PrimeCertificate{PrimeCertificate::Kind::LinearKernel}, 3, "(3, x) in Z[x,y]"},
    };
    for (const Inst& inst : instances) {
        std::vector<Poly> corpus = standard_corpus(inst.Q, 4, 3, seed);
        PDerivation d(FrobeniusLift::canonical(inst.Q.context(), inst.p));
        for (int n = 1; n <= 3; ++n) {
            PowerQuery q{inst.Q, inst.cert, n, inst.p, d, std::nullopt, std::nullopt};
            EquivalenceReport rep = mixed_symbolic_equivalence(q, corpus);
            size_t expected_dis = corrupt ? 1 : 0;
            line(r, inst.label + ", n = " + std::to_string(n),
                 rep.disagreements() == expected_dis,
                 std::to_string(rep.agreements()) + "/" + std::to_string(rep.samples.size()) +
                     " agree");
        }
    }

    if (include_slow) {
        Context xyz({"x", "y", "z"});
        Ideal Q(xyz, zz,
                {P("2", xyz), P("x^3 - y*z", xyz), P("y^2 - x*z", xyz), P("z^2 - x^2*y", xyz)});
        Poly w = P("x^5 + x*y^3 + x^2*y*z + z^3", xyz);
        line(r, "monomial curve: fixture outside the plain square",
             !contains(ideal_power(Q, 2), w), w.str());
        line(r, "monomial curve: fixture inside the symbolic square",
             symbolic_membership(Q, 2, w), "(Q^2 : w) escapes Q");
        PDerivation d(FrobeniusLift::canonical(xyz, 2));
        PowerQuery q{Q, PrimeCertificate{}, 2, mpz_class(2), d, std::nullopt, std::nullopt};
        line(r, "monomial curve: fixture inside the mixed square", mixed_power_membership(q, w),
             "");
        std::vector<Poly> corpus = standard_corpus(Q, 2, 2, seed);
        corpus.push_back(w);
        EquivalenceReport rep = mixed_symbolic_equivalence(q, corpus);
        line(r, "monomial curve, n = 2, corpus + fixture", rep.all_agree(),
             std::to_string(rep.agreements()) + "/" + std::to_string(rep.samples.size()) +
                 " agree");
    }
    return r;
}

// --- the verdicts do not depend on the lift --------------------------------

CheckReport suite_delta_independence(bool corrupt, uint64_t seed) {
    CheckReport r{"delta-independence", {}};
    Context x1({"x"});
    Domain zz = Domain::ZZ();
    Ideal Q(x1, zz, {P("2", x1), P("x", x1)});
    std::vector<FrobeniusLift> lifts = {FrobeniusLift::canonical(x1, 2),
                                        FrobeniusLift(x1, 2, {P("x^2 + 2*x", x1)})};
    std::vector<Poly> corpus = standard_corpus(Q, 4, 3, seed);
    for (int n = 1; n <= 3; ++n) {
        EquivalenceReport rep =
            delta_independence(Q, PrimeCertificate{PrimeCertificate::Kind::LinearKernel}, n,
                               mpz_class(2), lifts, corpus);
        size_t expected_dis = corrupt ? 1 : 0;
        line(r, "lifts x^2 vs x^2 + 2x, n = " + std::to_string(n),
             rep.disagreements() == expected_dis,
             std::to_string(rep.agreements()) + "/" + std::to_string(rep.samples.size()) +
                 " identical verdict rows");
    }
    return r;
}

// --- p-derivation axioms hold on random pairs ------------------------------

CheckReport suite_pderivation_axioms(bool corrupt, uint64_t seed) {
    CheckReport r{"pderivation-axioms", {}};
    Domain zz = Domain::ZZ();
    Context xy({"x", "y"});
    std::mt19937_64 eng(seed + 17);
    std::vector<Monomial> monos = monomials_up_to(2, 3);
    auto rand_poly = [&]() {
        std::vector<Term> terms;
        size_t k = 1 + eng() % 4;
        for (size_t i = 0; i < k; ++i)
            terms.push_back(
                Term{mpq_class(static_cast<long>(eng() % 19) - 9), monos[eng() % monos.size()]});
        return Poly::from_terms(xy, zz, std::move(terms));
    };
    for (long p : {2L, 3L, 5L}) {
        PDerivation d(FrobeniusLift::canonical(xy, p));
        std::vector<std::pair<Poly, Poly>> samples;
        for (int i = 0; i < 25; ++i) samples.emplace_back(rand_poly(), rand_poly());
        AxiomReport rep = verify_axioms(d, samples);
        std::string detail = std::to_string(rep.pairs_checked) + " pairs";
        if (!rep.ok())
            detail = rep.violations.front().rule + " rule failed at f = " +
                     rep.violations.front().f.str() + ", g = " + rep.violations.front().g.str();
        line(r, "product and sum rules, p = " + std::to_string(p), rep.ok(), detail);
    }
    Poly expected_cp = parse_poly(corrupt ? "x*y" : "-x*y", xy, zz);
    line(r, "frozen: C_2(x, y) = -xy", cp(P("x", xy), P("y", xy), 2) == expected_cp,
         cp(P("x", xy), P("y", xy), 2).str());
    line(r, "frozen: fermat quotient of 2 at p = 2 is -1", fermat_quotient(2, 2) == -1, "");
    return r;
}

// --- structural properties of the operator filtrations ---------------------

CheckReport suite_operator_properties(bool corrupt, uint64_t seed) {
    CheckReport r{"operator-properties", {}};
    Domain zz = Domain::ZZ();
    Context xy({"x", "y"});
    std::mt19937_64 eng(seed + 99);
    std::vector<Monomial> monos = monomials_up_to(2, 3);
    auto rand_poly = [&]() {
        std::vector<Term> terms;
        size_t k = 1 + eng() % 4;
        for (size_t i = 0; i < k; ++i)
            terms.push_back(
                Term{mpq_class(static_cast<long>(eng() % 19) - 9), monos[eng() % monos.size()]});
        return Poly::from_terms(xy, zz, std::move(terms));
    };

    {  // commutator identity: [D_alpha, g] = sum over 0 < lambda <= alpha
        bool all = true;
        std::string detail;
        for (int trial = 0; trial < 20 && all; ++trial) {
            Monomial alpha = monos[eng() % monos.size()];
            Poly g = rand_poly(), f = rand_poly();
            Poly lhs = apply_D(alpha, g * f) - g * apply_D(alpha, f);
            Poly rhs = apply_operator(commutator(alpha, g), f);
            all = lhs == rhs;
            if (!all) detail = "failed at g = " + g.str() + ", f = " + f.str();
        }
        line(r, "commutator of D_alpha with multiplication, 20 trials", all, detail);
    }

    {  // differential powers: members multiply into the level sum
        Ideal I(xy, zz, {P("x", xy), P("y", xy)});
        bool all = diff_power_membership(I, 2, P("x*y", xy)) &&
                   diff_power_membership(I, 2, P("x^2 - 7*y^2", xy)) &&
                   diff_power_membership(I, 3, P("x^2*y", xy)) &&
                   !diff_power_membership(I, 3, P("x*y", xy));
        line(r, "differential powers of (x, y): products add levels", all, "");
        bool chain = true;
        for (int trial = 0; trial < 10 && chain; ++trial) {
            Poly f = rand_poly();
            bool prev = true;
            for (int n = 1; n <= 3; ++n) {
                bool now = diff_power_membership(I, n, f);
                if (!prev && now) chain = false;
                prev = now;
            }
        }
        line(r, "differential powers descend, 10 trials", chain, "");
    }

    {  // p-derivation powers: levels add across products
        Context x1({"x"});
        Ideal Q(x1, zz, {P("2", x1), P("x", x1)});
        PDerivation d(FrobeniusLift::canonical(x1, 2));
        int expected_level_4 = corrupt ? 3 : 2;
        bool lvl = pder_power_membership(Q, expected_level_4, d, P("4", x1)) &&
                   !pder_power_membership(Q, 3, d, P("4", x1));
        line(r, "frozen: 4 sits at p-derivation level exactly 2", lvl, "");
        bool add = true;
        std::vector<std::pair<Poly, int>> mem = {
            {P("2", x1), 1}, {P("x", x1), 1}, {P("4", x1), 2}, {P("2*x", x1), 2}};
        for (const auto& [f, a] : mem)
            for (const auto& [g, b] : mem)
                add = add && pder_power_membership(Q, a + b, d, f * g);
        line(r, "p-derivation powers: levels add across products", add, "");
    }

    {  // mixed powers of a maximal ideal collapse to ordinary powers
        Context x1({"x"});
        Ideal M(x1, zz, {P("2", x1), P("x", x1)});
        PDerivation d(FrobeniusLift::canonical(x1, 2));
        bool all = true;
        std::string detail;
        std::mt19937_64 eng2(seed + 5);
        std::vector<Monomial> m1 = monomials_up_to(1, 4);
        for (int n = 1; n <= 3; ++n) {
            Ideal Mn = ideal_power(M, n);
            PowerQuery q{M, PrimeCertificate{}, n, mpz_class(2), d, std::nullopt, std::nullopt};
            for (int trial = 0; trial < 15 && all; ++trial) {
                std::vector<Term> terms;
                size_t k = 1 + eng2() % 4;
                for (size_t i = 0; i < k; ++i)
                    terms.push_back(Term{mpq_class(static_cast<long>(eng2() % 19) - 9),
                                         m1[eng2() % m1.size()]});
                Poly f = Poly::from_terms(x1, zz, std::move(terms));
                if (mixed_power_membership(q, f) != contains(Mn, f)) {
                    all = false;
                    detail = "n = " + std::to_string(n) + ", f = " + f.str();
                }
            }
        }
        line(r, "mixed powers of the maximal ideal (2, x) equal its ordinary powers", all,
             detail);
    }
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"base-example",       "fermat-valuations",    "stagnation",
            "px-asymmetry",       "quotient-y2-xz",       "separability-x2-t",
            "thm-equivalence-diff", "thm-equivalence-mixed", "delta-independence",
            "pderivation-axioms", "operator-properties"};
}

std::vector<CheckReport> run_paper_suites(const SuiteOptions& opts) {
    auto known_suite = [](const std::string& name) {
        for (const std::string& n : suite_names())
            if (n == name) return true;
        return false;
    };
    if (!opts.inject_failure.empty() && !known_suite(opts.inject_failure))
        throw InputError("unknown suite '" + opts.inject_failure + "' for failure injection");
    if (!opts.only.empty() && !known_suite(opts.only))
        throw InputError("unknown suite '" + opts.only + "'");

    auto bad = [&](const char* name) { return opts.inject_failure == name; };
    std::vector<CheckReport> out;
    auto add = [&](const char* name, const std::function<CheckReport()>& fn) {
        if (opts.only.empty() || opts.only == name) out.push_back(fn());
    };
    add("base-example", [&] { return suite_base_example(bad("base-example")); });
    add("fermat-valuations", [&] { return suite_fermat_valuations(bad("fermat-valuations")); });
    add("stagnation", [&] { return suite_stagnation(bad("stagnation")); });
    add("px-asymmetry", [&] { return suite_px_asymmetry(bad("px-asymmetry")); });
    add("quotient-y2-xz", [&] { return suite_quotient(bad("quotient-y2-xz")); });
    add("separability-x2-t", [&] { return suite_separability(bad("separability-x2-t")); });
    add("thm-equivalence-diff",
        [&] { return suite_equiv_diff(bad("thm-equivalence-diff"), opts.seed); });
    add("thm-equivalence-mixed", [&] {
        return suite_equiv_mixed(bad("thm-equivalence-mixed"), opts.seed, opts.include_slow);
    });
    add("delta-independence",
        [&] { return suite_delta_independence(bad("delta-independence"), opts.seed); });
    add("pderivation-axioms",
        [&] { return suite_pderivation_axioms(bad("pderivation-axioms"), opts.seed); });
    add("operator-properties",
        [&] { return suite_operator_properties(bad("operator-properties"), opts.seed); });
    return out;
}

}  // namespace diffpow
