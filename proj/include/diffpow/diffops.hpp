#ifndef DIFFPOW_DIFFOPS_HPP
#define DIFFPOW_DIFFOPS_HPP

#include "diffpow/lattice.hpp"

namespace diffpow {

/// Action of the divided-power operator D_alpha: a term c*z^beta maps to
/// c * binom(beta, alpha) * z^(beta-alpha) when beta >= alpha componentwise
/// and to zero otherwise. binom(beta, alpha) = prod_i binom(beta_i, alpha_i),
/// so the result stays integral in every coefficient domain.
Poly apply_D(const Monomial& alpha, const Poly& f);

/// Finite sum  sum_i c_i * D_(alpha_i)  with polynomial coefficients c_i.
/// Canonical form: parts with zero coefficient dropped, alphas distinct and
/// grevlex-ascending. order() is the largest surviving |alpha| (0 when the
/// operator is zero, matching the order of a multiplication operator).
class DiffOperator {
public:
    DiffOperator(Context ctx, Domain dom) : ctx_(std::move(ctx)), dom_(std::move(dom)) {}
    static DiffOperator zero(const Context& ctx, const Domain& dom) { return DiffOperator(ctx, dom); }
    // c * D_alpha as a one-part operator.
    static DiffOperator basis(const Poly& c, const Monomial& alpha);
    static DiffOperator from_parts(Context ctx, Domain dom,
                                   std::vector<std::pair<Poly, Monomial>> parts);

    const Context& context() const { return ctx_; }
    const Domain& domain() const { return dom_; }
    const std::vector<std::pair<Poly, Monomial>>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    int order() const;

    DiffOperator operator+(const DiffOperator& o) const;

private:
    std::vector<std::pair<Poly, Monomial>> parts_;
    Context ctx_;
    Domain dom_;
};

Poly apply_operator(const DiffOperator& op, const Poly& f);

/// sum_{lambda + mu = alpha} D_lambda(f) * D_mu(g). Verifies that the sum
/// equals apply_D(alpha, f*g) and throws std::logic_error if it does not:
/// the identity is a theorem, so a mismatch is an arithmetic bug.
Poly leibniz_expand(const Monomial& alpha, const Poly& f, const Poly& g);

/// The commutator [D_alpha, g*] = sum_{0 < lambda <= alpha} D_lambda(g) * D_(alpha-lambda),
/// of order |alpha| - 1 for alpha != 0 (and the zero operator for alpha = 0).
DiffOperator commutator(const Monomial& alpha, const Poly& g);

/// All exponent vectors of total degree <= bound, grevlex-ascending. When
/// support is given, only vectors supported on those variable indices.
std::vector<Monomial> exponents_up_to(size_t nvars, int bound,
                                      const std::optional<std::vector<size_t>>& support = std::nullopt);

/// f lies in the n-th differential power of I: D_alpha(f) in I for every
/// |alpha| <= n-1. Quantifying over the divided-power basis suffices because
/// the order-(n-1) operators form a free module on the D_alpha and I is an
/// ideal. diff_vars restricts differentiation to a variable subset, making
/// the operators linear over the subring generated by the other variables.
bool diff_power_membership(const Ideal& I, int n, const Poly& f,
                           const std::optional<std::vector<size_t>>& diff_vars = std::nullopt);

/// First alpha (grevlex order) with |alpha| <= n-1 and D_alpha(f) not in I,
/// if any. diff_power_membership(I, n, f) == !diff_power_violation(I, n, f).
std::optional<Monomial> diff_power_violation(const Ideal& I, int n, const Poly& f,
                                             const std::optional<std::vector<size_t>>& diff_vars = std::nullopt);

/// Matrix of D_alpha acting on the monomial basis of R_{<=D}, row-vector
/// convention: vec(D_alpha(f)) = vec(f) * M. Entries are binomials, hence
/// integers, for every coefficient domain.
IntMatrix divided_power_matrix(size_t nvars, const Monomial& alpha, int degree_bound);

/// { f : deg f <= D and D_alpha(f) in I for all |alpha| <= n-1 } as a
/// truncated lattice; exact because the conditions are linear in the
/// coefficients of f. alpha = 0 contributes the condition f in I itself.
TruncatedLattice diff_power_truncated(const Ideal& I, int n, int degree_bound,
                                      const std::optional<std::vector<size_t>>& diff_vars = std::nullopt);

}  // namespace diffpow

#endif
