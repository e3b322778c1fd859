#ifndef DIFFPOW_PDERIV_HPP
#define DIFFPOW_PDERIV_HPP

#include "diffpow/groebner.hpp"
#include "diffpow/poly.hpp"

namespace diffpow {

/// Ring endomorphism of Z[x_1..x_k] lifting Frobenius: phi fixes integer
/// constants, and phi(x_i) == x_i^p mod p for every variable (checked at
/// construction). That congruence then holds for every polynomial, which is
/// what makes the associated p-derivation integral.
class FrobeniusLift {
public:
    FrobeniusLift(Context ctx, const mpz_class& p, std::vector<Poly> images);

    /// The standard lift x_i -> x_i^p.
    static FrobeniusLift canonical(const Context& ctx, const mpz_class& p);

    const Context& context() const { return ctx_; }
    const mpz_class& p() const { return p_; }
    unsigned long p_ui() const { return p_ui_; }
    const std::vector<Poly>& images() const { return images_; }

    Poly apply(const Poly& f) const;  // pre: integer coefficients, same context

    std::string str() const;  // "x -> x^2, y -> y^2"

private:
    Context ctx_;
    mpz_class p_;
    unsigned long p_ui_;
    std::vector<Poly> images_;
};

/// The p-derivation delta(f) = (phi(f) - f^p) / p attached to a Frobenius
/// lift. The quotient is always exact for a valid lift; a divisibility
/// failure inside derive() means the lift invariant was broken. The product
/// and sum identities are theorems for this construction and are
/// spot-checked once on a fixed sample when the derivation is built.
class PDerivation {
public:
    explicit PDerivation(FrobeniusLift lift);

    const FrobeniusLift& lift() const { return lift_; }
    const Context& context() const { return lift_.context(); }
    const mpz_class& p() const { return lift_.p(); }

    Poly derive(const Poly& f) const;
    Poly iterate(int a, const Poly& f) const;  // a-fold self-composition, a >= 0

private:
    FrobeniusLift lift_;
};

/// The unique p-derivation on Z: m -> (m - m^p) / p.
mpz_class fermat_quotient(const mpz_class& m, const mpz_class& p);

/// C_p(f, g) = (f^p + g^p - (f+g)^p) / p, the integral polynomial correcting
/// the additivity of a p-derivation. Lies in (f) ∩ (g).
Poly cp(const Poly& f, const Poly& g, const mpz_class& p);

struct AxiomViolation {
    std::string rule;  // "product" or "sum"
    Poly f, g;
    Poly residual;  // lhs - rhs of the failed identity
};

/// Exact check of delta(fg) = f^p delta(g) + g^p delta(f) + p delta(f) delta(g)
/// and delta(f+g) = delta(f) + delta(g) + C_p(f, g) on every sample pair.
struct AxiomReport {
    int pairs_checked = 0;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

AxiomReport verify_axioms(const PDerivation& d, const std::vector<std::pair<Poly, Poly>>& samples);

/// f lies in the n-th p-differential power of I: delta^a(f) in I for all
/// a <= n-1.
bool pder_power_membership(const Ideal& I, int n, const PDerivation& d, const Poly& f);

}  // namespace diffpow

#endif
