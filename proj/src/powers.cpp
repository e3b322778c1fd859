#include "diffpow/powers.hpp"

#include <algorithm>

#include "diffpow/budget.hpp"

namespace diffpow {

namespace {

bool escapes(const Ideal& Q, const Ideal& J) {
    // J ⊄ Q iff some generator of J escapes.
    for (const Poly& g : J.generators()) {
        if (!contains(Q, g)) return true;
    }
    return false;
}

void require_level(int n) {
    if (n < 1) throw InputError("power level must be at least 1, got " + std::to_string(n));
}

void require_same_ring(const Ideal& Q, const Poly& f) {
    if (f.context() != Q.context() || f.domain() != Q.domain())
        throw InputError("polynomial and ideal live in different rings");
}

}  // namespace

bool symbolic_membership(const Ideal& Q, int n, const Poly& f) {
    require_level(n);
    require_same_ring(Q, f);
    if (f.is_zero()) return true;
    Ideal qn = ideal_power(Q, n);
    return escapes(Q, colon(qn, f));
}

bool symbolic_membership_quotient(const Ideal& Q, const Ideal& relations, int n, const Poly& f) {
    require_level(n);
    require_same_ring(Q, f);
    if (relations.context() != Q.context() || relations.domain() != Q.domain())
        throw InputError("relations ideal lives in a different ring");
    for (const Poly& r : relations.generators()) {
        if (!contains(Q, r)) throw InputError("relations are not contained in the prime");
    }
    if (f.is_zero()) return true;
    Ideal qn = ideal_sum(ideal_power(Q, n), relations);
    return escapes(Q, colon(qn, f));
}

void PowerQuery::validate() const {
    require_level(n);
    if (degree_bound && *degree_bound < 0) throw InputError("degree bound must be nonnegative");
    if (derivation && !p)
        throw InputError("query carries a p-derivation but no prime p");
    if (p) {
        if (Q.domain().kind() != DomainKind::IntegerRing)
            throw InputError("p-derivation queries require coefficients in Z");
        if (derivation && derivation->p() != *p)
            throw InputError("derivation prime does not match the query prime");
        if (derivation && derivation->context() != Q.context())
            throw InputError("derivation lives in a different ring");
        if (!contains(Q, Poly::constant(Q.context(), Q.domain(), *p)))
            throw InputError("prime p = " + p->get_str() + " does not lie in the ideal");
    }
    if (diff_vars) {
        for (size_t i : *diff_vars) {
            if (i >= Q.context().size())
                throw InputError("differentiation variable index out of range");
        }
    }
}

std::optional<MixedWitness> mixed_power_violation(const PowerQuery& q, const Poly& f) {
    q.validate();
    if (!q.derivation) throw InputError("mixed membership needs a p-derivation in the query");
    require_same_ring(q.Q, f);
    if (f.is_zero()) return std::nullopt;

    const PDerivation& d = *q.derivation;
    for (const Monomial& alpha : exponents_up_to(q.Q.context().size(), q.n - 1, q.diff_vars)) {
        const int base = static_cast<int>(alpha.degree());
        Poly g = apply_D(alpha, f);
        for (int s = 0; s + base <= q.n - 1; ++s) {
            BudgetScope::charge();
            if (!contains(q.Q, g)) return MixedWitness{s, alpha, g};
            if (s + 1 + base <= q.n - 1) g = d.derive(g);
        }
    }
    return std::nullopt;
}

bool mixed_power_membership(const PowerQuery& q, const Poly& f) {
    return !mixed_power_violation(q, f).has_value();
}

size_t EquivalenceReport::agreements() const {
    size_t k = 0;
    for (const SampleVerdict& s : samples)
        if (s.agree) ++k;
    return k;
}

size_t EquivalenceReport::disagreements() const { return samples.size() - agreements(); }

namespace {

void require_certificate(const Ideal& Q, const PrimeCertificate& cert) {
    if (!check_prime_certificate(Q, cert))
        throw InputError("prime certificate rejected: " + cert.str());
}

void require_no_integer_prime(const Ideal& Q) {
    static const int kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (int q : kSmallPrimes) {
        if (contains(Q, Poly::constant(Q.context(), Q.domain(), mpz_class(q))))
            throw InputError("ideal contains the prime " + std::to_string(q) +
                             "; differential membership alone does not match symbolic powers "
                             "there, use a mixed query");
    }
}

void push_sample(EquivalenceReport& rep, SampleVerdict v) {
    v.agree = std::all_of(v.verdicts.begin(), v.verdicts.end(),
                          [&](bool b) { return b == v.verdicts.front(); });
    if (!v.agree && !rep.first_disagreement) rep.first_disagreement = rep.samples.size();
    rep.samples.push_back(std::move(v));
}

std::string default_description(size_t n) { return std::to_string(n) + " corpus samples"; }

}  // namespace

EquivalenceReport diff_symbolic_equivalence(const Ideal& Q, const PrimeCertificate& cert, int n,
                                            const std::vector<Poly>& corpus) {
    require_level(n);
    require_certificate(Q, cert);
    require_no_integer_prime(Q);
    EquivalenceReport rep;
    rep.columns = {"symbolic", "differential"};
    rep.corpus_description = default_description(corpus.size());
    for (const Poly& f : corpus) {
        SampleVerdict v;
        v.f = f;
        bool sym = symbolic_membership(Q, n, f);
        std::optional<Monomial> viol = diff_power_violation(Q, n, f);
        v.verdicts = {sym, !viol.has_value()};
        if (viol) v.witness = MixedWitness{0, *viol, apply_D(*viol, f)};
        push_sample(rep, std::move(v));
    }
    return rep;
}

EquivalenceReport mixed_symbolic_equivalence(const PowerQuery& q, const std::vector<Poly>& corpus) {
    q.validate();
    if (!q.derivation) throw InputError("mixed equivalence needs a p-derivation in the query");
    require_certificate(q.Q, q.certificate);
    EquivalenceReport rep;
    rep.columns = {"symbolic", "mixed"};
    rep.corpus_description = default_description(corpus.size());
    for (const Poly& f : corpus) {
        SampleVerdict v;
        v.f = f;
        bool sym = symbolic_membership(q.Q, q.n, f);
        std::optional<MixedWitness> viol = mixed_power_violation(q, f);
        v.verdicts = {sym, !viol.has_value()};
        v.witness = std::move(viol);
        push_sample(rep, std::move(v));
    }
    return rep;
}

EquivalenceReport delta_independence(const Ideal& Q, const PrimeCertificate& cert, int n,
                                     const mpz_class& p, const std::vector<FrobeniusLift>& lifts,
                                     const std::vector<Poly>& corpus) {
    require_level(n);
    require_certificate(Q, cert);
    if (lifts.empty()) throw InputError("delta independence needs at least one lift");
    std::vector<PowerQuery> queries;
    for (const FrobeniusLift& lift : lifts) {
        PowerQuery q{Q, cert, n, p, PDerivation(lift), std::nullopt, std::nullopt};
        q.validate();
        queries.push_back(std::move(q));
    }
    EquivalenceReport rep;
    for (const FrobeniusLift& lift : lifts) rep.columns.push_back("lift " + lift.str());
    rep.corpus_description = default_description(corpus.size());
    for (const Poly& f : corpus) {
        SampleVerdict v;
        v.f = f;
        for (const PowerQuery& q : queries) {
            std::optional<MixedWitness> viol = mixed_power_violation(q, f);
            v.verdicts.push_back(!viol.has_value());
            if (viol && !v.witness) v.witness = std::move(viol);
        }
        push_sample(rep, std::move(v));
    }
    return rep;
}

bool CheckReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

CheckReport separability_counterexample_check() {
    Context ctx({"t", "x"});
    Domain zz = Domain::ZZ();
    auto P = [&](const std::string& s) { return parse_poly(s, ctx, zz); };

    Poly w = P("x^2 - t");
    Ideal Q(ctx, zz, {P("2"), w});
    // Lift fixing w: t -> 2x^2 t - t^2 maps w to x^4 - 2x^2 t + t^2 = w^2.
    FrobeniusLift lift(ctx, mpz_class(2), {P("2*x^2*t - t^2"), P("x^2")});
    PDerivation d(lift);

    CheckReport rep;
    rep.title = "inseparable residue extension: mixed power exceeds symbolic power";

    Poly dw = d.derive(w);
    rep.checks.push_back({"delta(w) = 0 under the w-fixing lift", dw.is_zero(), dw.str()});

    Poly dx = apply_D(Monomial({0, 1}), w);
    rep.checks.push_back(
        {"d/dx (w) = 2x lies in Q", dx == P("2*x") && contains(Q, dx), dx.str()});

    PowerQuery q{Q, PrimeCertificate{}, 2, mpz_class(2), d, std::nullopt,
                 std::vector<size_t>{1}};
    bool mixed = mixed_power_membership(q, w);
    rep.checks.push_back(
        {"w passes every level-2 composition over B = Z[t]", mixed, "diff vars = {x}"});

    bool sym = symbolic_membership(Q, 2, w);
    rep.checks.push_back({"w does not lie in the second symbolic power", !sym,
                          "colon criterion on (Q^2 : w)"});

    rep.checks.push_back({"membership gap witnessed", mixed && !sym, w.str()});
    return rep;
}

CheckReport diff_stagnation_check(const Ideal& Q, const mpz_class& p, int n_max) {
    require_level(n_max);
    Poly pc = Poly::constant(Q.context(), Q.domain(), p);
    if (!contains(Q, pc)) throw InputError("prime p must lie in the ideal");

    CheckReport rep;
    rep.title = "p survives every differential power but only the first symbolic power";
    for (int n = 1; n <= n_max; ++n) {
        bool in_diff = diff_power_membership(Q, n, pc);
        rep.checks.push_back({"p in differential power, level " + std::to_string(n), in_diff,
                              "every D_alpha, |alpha| < " + std::to_string(n) + ", kills p into Q"});
    }
    for (int n = 2; n <= n_max; ++n) {
        bool in_sym = symbolic_membership(Q, n, pc);
        rep.checks.push_back({"p outside symbolic power, level " + std::to_string(n), !in_sym,
                              "colon criterion"});
    }
    return rep;
}

}  // namespace diffpow
