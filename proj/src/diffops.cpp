#include "diffpow/diffops.hpp"

#include <algorithm>

#include "diffpow/budget.hpp"

namespace diffpow {

Poly apply_D(const Monomial& alpha, const Poly& f) {
    if (alpha.nvars() != f.context().size())
        throw InputError("operator exponent vector does not match the polynomial context");
    std::vector<Term> out;
    for (const Term& t : f.terms()) {
        if (!alpha.divides(t.mono)) continue;
        mpz_class b = 1;
        for (size_t i = 0; i < alpha.nvars(); ++i) b *= binomial(t.mono.exp(i), alpha.exp(i));
        out.push_back(Term{t.coeff * mpq_class(b), t.mono.quotient(alpha)});
    }
    return Poly::from_terms(f.context(), f.domain(), std::move(out));
}

DiffOperator DiffOperator::basis(const Poly& c, const Monomial& alpha) {
    return from_parts(c.context(), c.domain(), {{c, alpha}});
}

DiffOperator DiffOperator::from_parts(Context ctx, Domain dom,
                                      std::vector<std::pair<Poly, Monomial>> parts) {
    DiffOperator op(ctx, dom);
    std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        return grevlex_cmp(a.second, b.second) < 0;
    });
    for (auto& part : parts) {
        if (part.first.context() != ctx || part.first.domain() != dom)
            throw InputError("operator coefficient has a mismatched context or domain");
        if (part.second.nvars() != ctx.size())
            throw InputError("operator exponent vector does not match the context");
        if (!op.parts_.empty() && op.parts_.back().second == part.second)
            op.parts_.back().first = op.parts_.back().first + part.first;
        else
            op.parts_.push_back(std::move(part));
    }
    std::erase_if(op.parts_, [](const auto& part) { return part.first.is_zero(); });
    return op;
}

int DiffOperator::order() const {
    int o = 0;
    for (const auto& part : parts_) o = std::max(o, part.second.degree());
    return o;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
    if (ctx_ != o.ctx_ || !(dom_ == o.dom_))
        throw InputError("operator sum across different rings");
    auto parts = parts_;
    parts.insert(parts.end(), o.parts_.begin(), o.parts_.end());
    return from_parts(ctx_, dom_, std::move(parts));
}

Poly apply_operator(const DiffOperator& op, const Poly& f) {
    Poly acc = Poly::zero(op.context(), op.domain());
    for (const auto& [c, alpha] : op.parts()) acc = acc + c * apply_D(alpha, f);
    return acc;
}

namespace {

// Iterates lam over { 0 <= lam <= alpha componentwise }; returns false once
// exhausted. Starts from the zero vector.
bool next_below(std::vector<int>& lam, const Monomial& alpha) {
    for (size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] < alpha.exp(i)) {
            ++lam[i];
            return true;
        }
        lam[i] = 0;
    }
    return false;
}

}  // namespace

Poly leibniz_expand(const Monomial& alpha, const Poly& f, const Poly& g) {
    Poly sum = Poly::zero(f.context(), f.domain());
    std::vector<int> lam(alpha.nvars(), 0);
    do {
        Monomial L(lam);
        sum = sum + apply_D(L, f) * apply_D(alpha.quotient(L), g);
    } while (next_below(lam, alpha));
    if (sum != apply_D(alpha, f * g))
        throw std::logic_error("divided-power Leibniz identity violated: arithmetic bug");
    return sum;
}

DiffOperator commutator(const Monomial& alpha, const Poly& g) {
    std::vector<std::pair<Poly, Monomial>> parts;
    std::vector<int> lam(alpha.nvars(), 0);
    while (next_below(lam, alpha)) {
        Monomial L(lam);
        parts.emplace_back(apply_D(L, g), alpha.quotient(L));
    }
    return DiffOperator::from_parts(g.context(), g.domain(), std::move(parts));
}

std::vector<Monomial> exponents_up_to(size_t nvars, int bound,
                                      const std::optional<std::vector<size_t>>& support) {
    std::vector<Monomial> all = monomials_up_to(nvars, bound);
    if (!support) return all;
    std::vector<char> allowed(nvars, 0);
    for (size_t i : *support) {
        if (i >= nvars) throw InputError("differentiation variable index out of range");
        allowed[i] = 1;
    }
    std::vector<Monomial> out;
    for (const Monomial& m : all) {
        bool ok = true;
        for (size_t i = 0; i < nvars && ok; ++i)
            if (m.exp(i) > 0 && !allowed[i]) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

std::optional<Monomial> diff_power_violation(const Ideal& I, int n, const Poly& f,
                                             const std::optional<std::vector<size_t>>& diff_vars) {
    if (n < 1) throw InputError("differential power level must be >= 1");
    if (f.context() != I.context()) throw InputError("polynomial context does not match the ideal");
    for (const Monomial& alpha : exponents_up_to(I.context().size(), n - 1, diff_vars)) {
        BudgetScope::charge();
        if (!contains(I, apply_D(alpha, f))) return alpha;
    }
    return std::nullopt;
}

bool diff_power_membership(const Ideal& I, int n, const Poly& f,
                           const std::optional<std::vector<size_t>>& diff_vars) {
    return !diff_power_violation(I, n, f, diff_vars).has_value();
}

namespace {

size_t index_of(const std::vector<Monomial>& index, const Monomial& m) {
    auto it = std::lower_bound(index.begin(), index.end(), m,
                               [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; });
    return size_t(it - index.begin());
}

}  // namespace

IntMatrix divided_power_matrix(size_t nvars, const Monomial& alpha, int degree_bound) {
    std::vector<Monomial> index = monomials_up_to(nvars, degree_bound);
    IntMatrix M(index.size(), index.size());
    for (size_t j = 0; j < index.size(); ++j) {
        const Monomial& beta = index[j];
        if (!alpha.divides(beta)) continue;
        mpz_class b = 1;
        for (size_t i = 0; i < nvars; ++i) b *= binomial(beta.exp(i), alpha.exp(i));
        M.at(j, index_of(index, beta.quotient(alpha))) = b;
    }
    return M;
}

TruncatedLattice diff_power_truncated(const Ideal& I, int n, int degree_bound,
                                      const std::optional<std::vector<size_t>>& diff_vars) {
    if (n < 1) throw InputError("differential power level must be >= 1");
    TruncatedLattice target = truncated_ideal_lattice(I, degree_bound);
    std::vector<IntMatrix> maps;
    for (const Monomial& alpha : exponents_up_to(I.context().size(), n - 1, diff_vars))
        maps.push_back(divided_power_matrix(I.context().size(), alpha, degree_bound));
    std::vector<TruncatedLattice> targets(maps.size(), target);
    return preimage_lattice(maps, targets);
}

}  // namespace diffpow
