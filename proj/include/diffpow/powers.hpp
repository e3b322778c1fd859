#ifndef DIFFPOW_POWERS_HPP
#define DIFFPOW_POWERS_HPP

#include <cstdint>

#include "diffpow/diffops.hpp"
#include "diffpow/pderiv.hpp"

namespace diffpow {

/// f lies in the n-th symbolic power of the prime Q, decided by the colon
/// criterion: f in Q^(n) iff (Q^n : f) is not contained in Q. This unwinds
/// the localization Q^n R_Q ∩ R without any primary decomposition. f = 0
/// belongs to every power.
bool symbolic_membership(const Ideal& Q, int n, const Poly& f);

/// Symbolic membership computed in the quotient by `relations` (an ideal
/// contained in Q, with Q/relations prime in the quotient): true iff
/// ((Q^n + relations) : f) is not contained in Q in the ambient ring.
bool symbolic_membership_quotient(const Ideal& Q, const Ideal& relations, int n, const Poly& f);

/// One membership question: which prime, which level, and the p-derivation
/// data when the prime contains an integer prime.
struct PowerQuery {
    Ideal Q;
    PrimeCertificate certificate;
    int n = 1;
    std::optional<mpz_class> p;
    std::optional<PDerivation> derivation;
    std::optional<int> degree_bound;
    // Differentiate only these variables; the others behave as coefficient
    // constants (operators linear over the subring they generate).
    std::optional<std::vector<size_t>> diff_vars;

    void validate() const;  // throws InputError on an inconsistent query
};

/// A composition witnessing non-membership: delta^s applied after D_alpha,
/// with the resulting value outside the ideal.
struct MixedWitness {
    int s = 0;
    Monomial alpha;
    Poly value;
};

/// First composition (delta^s ∘ D_alpha), s + |alpha| <= n-1, whose value on
/// f leaves Q; nullopt when f lies in the n-th mixed differential power.
/// Enumeration is deterministic: alpha grevlex-ascending, then s ascending.
/// delta is always applied after the differential operator.
std::optional<MixedWitness> mixed_power_violation(const PowerQuery& q, const Poly& f);

bool mixed_power_membership(const PowerQuery& q, const Poly& f);

struct SampleVerdict {
    Poly f;
    std::vector<bool> verdicts;  // one per report column
    bool agree = true;
    std::optional<MixedWitness> witness;  // behind the first false non-symbolic verdict
};

struct EquivalenceReport {
    std::string corpus_description;
    std::vector<std::string> columns;
    std::vector<SampleVerdict> samples;
    std::optional<size_t> first_disagreement;

    bool all_agree() const { return !first_disagreement.has_value(); }
    size_t agreements() const;
    size_t disagreements() const;
};

/// Deterministic test corpus: all monomials of degree <= degree_bound, all
/// products of at most max_product generators, and 100 seeded sparse
/// polynomials (at most 5 terms, coefficients in [-9, 9], term degree <= 3).
/// Duplicates dropped, first occurrence kept.
std::vector<Poly> standard_corpus(const Ideal& Q, int degree_bound, int max_product = 3,
                                  uint64_t seed = 0);

/// Verdict table symbolic vs differential membership at level n over the
/// corpus. Requires a valid certificate and Q ∩ Z = (0) (checked against
/// every prime below 50).
EquivalenceReport diff_symbolic_equivalence(const Ideal& Q, const PrimeCertificate& cert, int n,
                                            const std::vector<Poly>& corpus);

/// Verdict table symbolic vs mixed membership over the corpus; the query
/// carries the level, prime, and derivation.
EquivalenceReport mixed_symbolic_equivalence(const PowerQuery& q, const std::vector<Poly>& corpus);

/// Mixed membership verdicts across several lifts of Frobenius; agreement
/// means the verdict vector is constant in the choice of lift.
EquivalenceReport delta_independence(const Ideal& Q, const PrimeCertificate& cert, int n,
                                     const mpz_class& p, const std::vector<FrobeniusLift>& lifts,
                                     const std::vector<Poly>& corpus);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::string title;
    std::vector<CheckLine> checks;
    bool ok() const;
};

/// Bundled instance where the residue extension is inseparable: in Z[t,x]
/// with w = x^2 - t and Q = (2, w), a lift fixing w gives delta(w) = 0 and
/// d/dx(w) = 2x in Q, so w passes the level-2 mixed test over B = Z[t], yet
/// w is not in Q^(2). The mixed power strictly exceeds the symbolic power.
CheckReport separability_counterexample_check();

/// Differential powers alone stagnate in mixed characteristic: p stays in
/// every differential power of Q while leaving Q^(n) from n = 2 on.
CheckReport diff_stagnation_check(const Ideal& Q, const mpz_class& p, int n_max);

}  // namespace diffpow

#endif
