#include <random>
#include <unordered_set>

#include "diffpow/powers.hpp"

namespace diffpow {

namespace {

// Multiset products of at most max_product generators, enumerated in
// generator-index order so the corpus is reproducible.
void gen_products(const std::vector<Poly>& gens, size_t start, int left, const Poly& acc,
                  std::vector<Poly>& out) {
    for (size_t i = start; i < gens.size(); ++i) {
        Poly next = acc * gens[i];
        out.push_back(next);
        if (left > 1) gen_products(gens, i, left - 1, next, out);
    }
}

}  // namespace

std::vector<Poly> standard_corpus(const Ideal& Q, int degree_bound, int max_product,
                                  uint64_t seed) {
    if (degree_bound < 0) throw InputError("corpus degree bound must be nonnegative");
    const Context& ctx = Q.context();
    const Domain dom = Q.domain();

    std::vector<Poly> raw;
    for (const Monomial& m : monomials_up_to(ctx.size(), degree_bound))
        raw.push_back(Poly::from_terms(ctx, dom, {Term{mpq_class(1), m}}));

    if (max_product >= 1)
        gen_products(Q.generators(), 0, max_product, Poly::constant(ctx, dom, 1), raw);

    std::vector<Monomial> small = monomials_up_to(ctx.size(), 3);
    std::mt19937_64 eng(seed);
    auto coeff = [&]() {
        // Nonzero integer in [-9, 9].
        long c = 1 + static_cast<long>(eng() % 9);
        if (eng() % 2) c = -c;
        return mpq_class(c);
    };
    for (int i = 0; i < 100; ++i) {
        size_t nterms = 1 + eng() % 5;
        std::vector<Term> terms;
        for (size_t t = 0; t < nterms; ++t)
            terms.push_back(Term{coeff(), small[eng() % small.size()]});
        raw.push_back(Poly::from_terms(ctx, dom, std::move(terms)));
    }

    std::vector<Poly> out;
    std::unordered_set<std::string> seen;
    for (Poly& f : raw) {
        if (seen.insert(f.str()).second) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace diffpow
