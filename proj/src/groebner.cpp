#include "diffpow/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "diffpow/budget.hpp"

namespace diffpow {

namespace {

using TermVec = std::vector<Term>;

TermVec sorted_terms(const Poly& f, const Order& ord) {
    TermVec v = f.terms();
    std::sort(v.begin(), v.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
    return v;
}

Poly to_poly(const Context& ctx, const Domain& dom, TermVec v) {
    return Poly::from_terms(ctx, dom, std::move(v));
}

// r -= c * x^m * g, all vectors sorted descending in ord.
TermVec sub_scaled(const TermVec& r, const mpq_class& c, const Monomial& m, const TermVec& g,
                   const Order& ord, const Domain& dom) {
    TermVec out;
    out.reserve(r.size() + g.size());
    size_t i = 0, j = 0;
    while (i < r.size() && j < g.size()) {
        Monomial gm = g[j].mono * m;
        int cmp = ord.compare(r[i].mono, gm);
        if (cmp > 0) {
            out.push_back(r[i++]);
        } else if (cmp < 0) {
            mpq_class v = dom.normalize(-c * g[j].coeff);
            if (v != 0) out.push_back({std::move(v), std::move(gm)});
            ++j;
        } else {
            mpq_class v = dom.normalize(r[i].coeff - c * g[j].coeff);
            if (v != 0) out.push_back({std::move(v), r[i].mono});
            ++i, ++j;
        }
    }
    for (; i < r.size(); ++i) out.push_back(r[i]);
    for (; j < g.size(); ++j) {
        mpq_class v = dom.normalize(-c * g[j].coeff);
        if (v != 0) out.push_back({std::move(v), g[j].mono * m});
    }
    return out;
}

bool z_divisible(const mpq_class& a, const mpq_class& b) {
    return mpz_divisible_p(a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
}

mpq_class z_quot(const mpq_class& a, const mpq_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    return mpq_class(q);
}

// Floor quotient: a = q*b + r with r in [0, b), b > 0.
mpq_class z_fdiv(const mpq_class& a, const mpq_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    return mpq_class(q);
}

// Full reduction over Z. Euclidean on coefficients: a term survives into the
// remainder only when every applicable divisor leaves it with a coefficient
// in [0, lc). Exact divisors are preferred so ideal elements die cleanly.
TermVec reduce_z(TermVec f, const std::vector<TermVec>& basis, const Order& ord, const Domain& dom) {
    TermVec out;
    while (!f.empty()) {
        BudgetScope::charge();
        const Term lt = f.front();
        const TermVec* hit = nullptr;
        mpq_class q;
        for (const auto& g : basis) {
            if (!g.front().mono.divides(lt.mono)) continue;
            if (z_divisible(lt.coeff, g.front().coeff)) {
                hit = &g;
                q = z_quot(lt.coeff, g.front().coeff);
                break;
            }
        }
        if (!hit) {
            for (const auto& g : basis) {
                if (!g.front().mono.divides(lt.mono)) continue;
                mpq_class fq = z_fdiv(lt.coeff, g.front().coeff);
                if (fq != 0) {
                    hit = &g;
                    q = fq;
                    break;
                }
            }
        }
        if (hit) {
            f = sub_scaled(f, q, lt.mono.quotient(hit->front().mono), *hit, ord, dom);
        } else {
            out.push_back(lt);
            f.erase(f.begin());
        }
    }
    return out;
}

// Full reduction over a field: classical multivariate division.
TermVec reduce_field(TermVec f, const std::vector<TermVec>& basis, const Order& ord,
                     const Domain& dom) {
    TermVec out;
    while (!f.empty()) {
        BudgetScope::charge();
        const Term lt = f.front();
        const TermVec* hit = nullptr;
        for (const auto& g : basis) {
            if (g.front().mono.divides(lt.mono)) {
                hit = &g;
                break;
            }
        }
        if (hit) {
            mpq_class q = dom.normalize(lt.coeff * dom.invert(hit->front().coeff));
            f = sub_scaled(f, q, lt.mono.quotient(hit->front().mono), *hit, ord, dom);
        } else {
            out.push_back(lt);
            f.erase(f.begin());
        }
    }
    return out;
}

TermVec reduce_full(TermVec f, const std::vector<TermVec>& basis, const Order& ord,
                    const Domain& dom) {
    return dom.is_field() ? reduce_field(std::move(f), basis, ord, dom)
                          : reduce_z(std::move(f), basis, ord, dom);
}

void normalize_lead(TermVec& f, const Domain& dom) {
    if (f.empty()) return;
    if (dom.is_field()) {
        mpq_class inv = dom.invert(f.front().coeff);
        for (auto& t : f) t.coeff = dom.normalize(t.coeff * inv);
    } else if (f.front().coeff < 0) {
        for (auto& t : f) t.coeff = -t.coeff;
    }
}

struct PendingPair {
    size_t i, j;
};

// Deterministic normal selection: smallest lcm degree, then smallest lcm in
// the order, then lowest indices.
size_t pick_pair(const std::deque<PendingPair>& pending, const std::vector<TermVec>& G,
                 const Order& ord) {
    size_t best = 0;
    Monomial best_lcm =
        Monomial::lcm(G[pending[0].i].front().mono, G[pending[0].j].front().mono);
    for (size_t k = 1; k < pending.size(); ++k) {
        Monomial m = Monomial::lcm(G[pending[k].i].front().mono, G[pending[k].j].front().mono);
        int c = m.degree() != best_lcm.degree() ? (m.degree() < best_lcm.degree() ? -1 : 1)
                                                : ord.compare(m, best_lcm);
        if (c < 0) {
            best = k;
            best_lcm = m;
        }
    }
    return best;
}

// Completion over Z after Kandri-Rody--Kapur: S-polynomials cancel leading
// terms via lcm of the coefficients, GCD-polynomials create the Bezout
// combination so leading coefficients close under gcd. No pair-skipping
// criteria beyond the provably trivial one (divisible leading coefficients
// make the GCD-polynomial reduce to zero in one step).
std::vector<TermVec> complete_z(std::vector<TermVec> G, const Order& ord, const Domain& dom) {
    std::deque<PendingPair> pending;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pending.push_back({i, j});

    auto add_element = [&](TermVec h) {
        normalize_lead(h, dom);
        G.push_back(std::move(h));
        for (size_t i = 0; i + 1 < G.size(); ++i) pending.push_back({i, G.size() - 1});
    };

    while (!pending.empty()) {
        BudgetScope::charge(8);
        size_t k = pick_pair(pending, G, ord);
        auto [i, j] = pending[k];
        pending.erase(pending.begin() + (long)k);

        const TermVec &f = G[i], &g = G[j];
        const Monomial m = Monomial::lcm(f.front().mono, g.front().mono);
        const mpq_class lcf = f.front().coeff, lcg = g.front().coeff;

        mpz_class L;
        mpz_lcm(L.get_mpz_t(), lcf.get_num().get_mpz_t(), lcg.get_num().get_mpz_t());
        TermVec s;  // (L/lcf) x^{m-lm f} f - (L/lcg) x^{m-lm g} g
        {
            TermVec left;
            mpq_class cf = z_quot(mpq_class(L), lcf);
            for (const auto& t : f) left.push_back({t.coeff * cf, t.mono * m.quotient(f.front().mono)});
            s = sub_scaled(left, z_quot(mpq_class(L), lcg), m.quotient(g.front().mono), g, ord, dom);
        }
        s = reduce_z(std::move(s), G, ord, dom);
        if (!s.empty()) add_element(std::move(s));

        bool lcf_div = z_divisible(lcg, lcf) || z_divisible(lcf, lcg);
        if (!lcf_div) {
            mpz_class d, a, b;
            mpz_gcdext(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), lcf.get_num().get_mpz_t(),
                       lcg.get_num().get_mpz_t());
            TermVec left;
            for (const auto& t : G[i])
                left.push_back({t.coeff * mpq_class(a), t.mono * m.quotient(G[i].front().mono)});
            TermVec p = sub_scaled(left, mpq_class(-b), m.quotient(G[j].front().mono), G[j], ord, dom);
            p = reduce_z(std::move(p), G, ord, dom);
            if (!p.empty()) add_element(std::move(p));
        }
    }
    return G;
}

std::vector<TermVec> complete_field(std::vector<TermVec> G, const Order& ord, const Domain& dom) {
    std::deque<PendingPair> pending;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pending.push_back({i, j});

    while (!pending.empty()) {
        BudgetScope::charge(8);
        size_t k = pick_pair(pending, G, ord);
        auto [i, j] = pending[k];
        pending.erase(pending.begin() + (long)k);

        const TermVec &f = G[i], &g = G[j];
        // Product criterion: coprime leading monomials give a zero-reducing
        // S-polynomial over a field.
        if (Monomial::gcd(f.front().mono, g.front().mono).is_one()) continue;

        const Monomial m = Monomial::lcm(f.front().mono, g.front().mono);
        TermVec left;
        mpq_class cf = dom.invert(f.front().coeff);
        for (const auto& t : f)
            left.push_back({dom.normalize(t.coeff * cf), t.mono * m.quotient(f.front().mono)});
        TermVec s = sub_scaled(left, dom.invert(g.front().coeff), m.quotient(g.front().mono), g,
                               ord, dom);
        s = reduce_full(std::move(s), G, ord, dom);
        if (!s.empty()) {
            normalize_lead(s, dom);
            G.push_back(std::move(s));
            for (size_t a = 0; a + 1 < G.size(); ++a) pending.push_back({a, G.size() - 1});
        }
    }
    return G;
}

// Minimalize (drop elements whose leading term is strongly reducible by
// another) and tail-reduce. Deterministic given the order.
std::vector<TermVec> interreduce(std::vector<TermVec> G, const Order& ord, const Domain& dom) {
    auto lt_less = [&](const TermVec& a, const TermVec& b) {
        if (int c = ord.compare(a.front().mono, b.front().mono); c != 0) return c < 0;
        return a.front().coeff < b.front().coeff;
    };
    std::sort(G.begin(), G.end(), lt_less);

    std::vector<bool> keep(G.size(), true);
    for (size_t i = G.size(); i-- > 0;) {  // descending: big leads drop first
        for (size_t j = 0; j < G.size(); ++j) {
            if (j == i || !keep[j]) continue;
            bool mono_div = G[j].front().mono.divides(G[i].front().mono);
            bool coeff_div = dom.is_field() || z_divisible(G[i].front().coeff, G[j].front().coeff);
            if (mono_div && coeff_div) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<TermVec> minimal;
    for (size_t i = 0; i < G.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(G[i]));

    std::vector<TermVec> out;
    for (const auto& g : minimal) {
        TermVec tail(g.begin() + 1, g.end());
        tail = reduce_full(std::move(tail), minimal, ord, dom);
        TermVec h;
        h.push_back(g.front());
        h.insert(h.end(), tail.begin(), tail.end());
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), lt_less);
    return out;
}

std::vector<TermVec> compute_basis(const std::vector<Poly>& gens, const Order& ord,
                                   const Domain& dom) {
    std::vector<TermVec> G;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        TermVec v = sorted_terms(g, ord);
        normalize_lead(v, dom);
        G.push_back(std::move(v));
    }
    if (G.empty()) return G;
    G = dom.is_field() ? complete_field(std::move(G), ord, dom)
                       : complete_z(std::move(G), ord, dom);
    return interreduce(std::move(G), ord, dom);
}

}  // namespace

// ---------------------------------------------------------------- Ideal

struct Ideal::Cache {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const GroebnerBasis>> by_order;
};

Ideal::Ideal(Context ctx, Domain dom, std::vector<Poly> gens)
    : ctx_(std::move(ctx)), dom_(std::move(dom)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.context() != ctx_) throw InputError("generator context mismatch");
        if (g.domain() != dom_) throw InputError("generator domain mismatch");
        gens_.push_back(std::move(g));
    }
}

std::shared_ptr<const GroebnerBasis> Ideal::groebner(const Order& ord) const {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->by_order.find(ord.key());
    if (it != cache_->by_order.end()) return it->second;

    auto basis = compute_basis(gens_, ord, dom_);
    auto gb = std::make_shared<GroebnerBasis>(GroebnerBasis{
        {}, ord, dom_.kind() == DomainKind::IntegerRing});
    for (auto& v : basis) gb->elements.push_back(to_poly(ctx_, dom_, std::move(v)));
    cache_->by_order[ord.key()] = gb;
    return gb;
}

// ---------------------------------------------------------------- queries

Poly normal_form(const Poly& f, const GroebnerBasis& gb) {
    std::vector<TermVec> basis;
    for (const auto& g : gb.elements) basis.push_back(sorted_terms(g, gb.order));
    TermVec r = reduce_full(sorted_terms(f, gb.order), basis, gb.order, f.domain());
    return to_poly(f.context(), f.domain(), std::move(r));
}

bool contains(const Ideal& I, const Poly& f) {
    if (f.context() != I.context() || f.domain() != I.domain())
        throw InputError("membership query context/domain mismatch");
    if (f.is_zero()) return true;
    return normal_form(f, *I.groebner()).is_zero();
}

Poly poly_divexact(const Poly& g, const Poly& f) {
    if (f.is_zero()) throw InputError("exact division by the zero polynomial");
    const Context& ctx = g.context();
    const Domain& dom = g.domain();
    Poly q = Poly::zero(ctx, dom);
    Poly r = g;
    while (!r.is_zero()) {
        BudgetScope::charge();
        const Term& lr = r.leading_term();
        const Term& lf = f.leading_term();
        if (!lf.mono.divides(lr.mono)) throw InputError("polynomial division is not exact");
        mpq_class c;
        if (dom.is_field()) {
            c = dom.normalize(lr.coeff * dom.invert(lf.coeff));
        } else {
            if (!z_divisible(lr.coeff, lf.coeff))
                throw InputError("polynomial division is not exact");
            c = z_quot(lr.coeff, lf.coeff);
        }
        Poly t = Poly::term(ctx, dom, c, lr.mono.quotient(lf.mono));
        q = q + t;
        r = r - t * f;
    }
    return q;
}

namespace {

Context ext_context(const Context& ctx) {
    std::vector<std::string> names;
    names.push_back("#t");  // '#' cannot appear in parsed identifiers
    for (const auto& n : ctx.names()) names.push_back(n);
    return Context(names);
}

Poly embed_prefix(const Poly& f, const Context& ext, const Domain& dom) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        std::vector<int> e;
        e.reserve(t.mono.nvars() + 1);
        e.push_back(0);
        for (size_t i = 0; i < t.mono.nvars(); ++i) e.push_back(t.mono.exp(i));
        ts.push_back({t.coeff, Monomial(std::move(e))});
    }
    return Poly::from_terms(ext, dom, std::move(ts));
}

Poly unembed_prefix(const Poly& f, const Context& orig, const Domain& dom) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        if (t.mono.exp(0) != 0) throw std::logic_error("elimination leaked the auxiliary variable");
        std::vector<int> e(t.mono.exps().begin() + 1, t.mono.exps().end());
        ts.push_back({t.coeff, Monomial(std::move(e))});
    }
    return Poly::from_terms(orig, dom, std::move(ts));
}

}  // namespace

Ideal intersect(const Ideal& I, const Ideal& J) {
    if (I.context() != J.context() || I.domain() != J.domain())
        throw InputError("ideal operation context/domain mismatch");
    const Context& ctx = I.context();
    const Domain& dom = I.domain();
    if (I.generators().empty() || J.generators().empty()) return Ideal(ctx, dom, {});

    Context ext = ext_context(ctx);
    Poly t = Poly::variable(ext, dom, 0);
    Poly one_minus_t = Poly::constant(ext, dom, 1) - t;
    std::vector<Poly> gens;
    for (const auto& g : I.generators()) gens.push_back(t * embed_prefix(g, ext, dom));
    for (const auto& h : J.generators()) gens.push_back(one_minus_t * embed_prefix(h, ext, dom));

    Ideal E(ext, dom, std::move(gens));
    auto gb = E.groebner(Order::block(1));

    // With the block order, an element free of #t in its leading monomial is
    // free of #t everywhere; the filtered set is a (strong) basis of I ∩ J.
    std::vector<Poly> result;
    for (const auto& g : gb->elements) {
        bool pure = true;
        for (const auto& term : g.terms())
            if (term.mono.exp(0) != 0) pure = false;
        if (pure) result.push_back(unembed_prefix(g, ctx, dom));
    }
    return Ideal(ctx, dom, std::move(result));
}

Ideal colon(const Ideal& I, const Poly& f) {
    if (f.is_zero()) throw InputError("colon by the zero polynomial");
    if (f.context() != I.context() || f.domain() != I.domain())
        throw InputError("ideal operation context/domain mismatch");
    Ideal K = intersect(I, Ideal(I.context(), I.domain(), {f}));
    std::vector<Poly> gens;
    for (const auto& g : K.generators()) gens.push_back(poly_divexact(g, f));
    return Ideal(I.context(), I.domain(), std::move(gens));
}

std::pair<Ideal, int> saturation(const Ideal& I, const Poly& f) {
    Ideal cur = I;
    for (int k = 0; k < 64; ++k) {
        Ideal next = colon(cur, f);
        if (ideal_contains(cur, next)) return {cur, k};  // chain ascends, so this is equality
        cur = next;
    }
    throw ResourceError("saturation chain did not stabilize within 64 steps");
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
    for (const auto& g : J.generators())
        if (!contains(I, g)) return false;
    return true;
}

bool ideal_eq(const Ideal& I, const Ideal& J) {
    return ideal_contains(I, J) && ideal_contains(J, I);
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    if (I.context() != J.context() || I.domain() != J.domain())
        throw InputError("ideal operation context/domain mismatch");
    std::vector<Poly> gens = I.generators();
    gens.insert(gens.end(), J.generators().begin(), J.generators().end());
    return Ideal(I.context(), I.domain(), std::move(gens));
}

Ideal ideal_power(const Ideal& I, int n) {
    if (n < 0) throw InputError("ideal power exponent must be nonnegative");
    const Context& ctx = I.context();
    const Domain& dom = I.domain();
    if (n == 0) return Ideal(ctx, dom, {Poly::constant(ctx, dom, 1)});
    const auto& gens = I.generators();
    std::vector<Poly> out;
    // All degree-n monomials in the generators (multisets).
    std::vector<Poly> cur{Poly::constant(ctx, dom, 1)};
    auto rec = [&](auto&& self, size_t from, int left, const Poly& acc) -> void {
        if (left == 0) {
            out.push_back(acc);
            return;
        }
        for (size_t i = from; i < gens.size(); ++i) self(self, i, left - 1, acc * gens[i]);
    };
    rec(rec, 0, n, cur[0]);
    return Ideal(ctx, dom, std::move(out));
}

// ------------------------------------------------- prime certificates

std::string PrimeCertificate::str() const {
    switch (kind) {
        case Kind::Trusted: return "trusted";
        case Kind::LinearKernel: return "linear-kernel";
        case Kind::PPlusIrreducibleUnivariate: return "p-plus-irreducible";
        case Kind::PrincipalIrreducibleOverQ: return "principal-irreducible";
    }
    return "?";
}

PrimeCertificate PrimeCertificate::from_string(std::string_view s) {
    if (s == "trusted") return {Kind::Trusted};
    if (s == "linear-kernel") return {Kind::LinearKernel};
    if (s == "p-plus-irreducible") return {Kind::PPlusIrreducibleUnivariate};
    if (s == "principal-irreducible") return {Kind::PrincipalIrreducibleOverQ};
    throw InputError("unknown prime certificate kind '" + std::string(s) + "'");
}

namespace {

bool is_prime_int(const mpz_class& n) {
    if (n < 2) return false;
    for (mpz_class d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Quotient-is-a-polynomial-ring check: the degree-1 generators must
// triangulate with unit pivots (over Z, or mod p when a prime constant is
// present), each eliminating a distinct variable.
bool check_linear_kernel(const Ideal& Q) {
    const Context& ctx = Q.context();
    std::optional<mpz_class> p;
    std::vector<Poly> linear;
    for (const auto& g : Q.generators()) {
        if (g.is_constant()) {
            mpz_class c = abs(mpz_class(g.terms()[0].coeff.get_num()));
            if (p) throw InputError("linear-kernel certificate: more than one constant generator");
            if (!is_prime_int(c)) return false;
            p = c;
        } else if (g.degree() == 1) {
            linear.push_back(g);
        } else {
            throw InputError("linear-kernel certificate: generator of degree > 1");
        }
    }

    auto unit_coeff = [&](const mpq_class& c) {
        if (p) {
            mpz_class r = c.get_num() % *p;
            return r != 0;
        }
        return c == 1 || c == -1;
    };

    std::vector<bool> used_var(ctx.size(), false);
    std::vector<Poly> work = std::move(linear);
    while (!work.empty()) {
        // Find a form with a unit coefficient on an unused variable.
        std::optional<std::pair<size_t, size_t>> pick;  // (form index, var)
        for (size_t i = 0; i < work.size() && !pick; ++i) {
            for (const auto& t : work[i].terms()) {
                if (t.mono.degree() != 1) continue;
                size_t v = 0;
                while (t.mono.exp(v) == 0) ++v;
                if (!used_var[v] && unit_coeff(t.coeff)) {
                    pick = {i, v};
                    break;
                }
            }
        }
        if (!pick) return false;
        auto [idx, v] = *pick;
        Poly pivot = work[idx];
        work.erase(work.begin() + (long)idx);
        used_var[v] = true;
        // Eliminate v from the remaining forms: solve pivot for x_v and
        // substitute. Over Z the unit pivot keeps everything integral.
        mpq_class a = pivot.coeff_of(Monomial::var(ctx.size(), v));
        Poly rest = pivot - Poly::term(ctx, Q.domain(), a, Monomial::var(ctx.size(), v));
        for (auto& w : work) {
            mpq_class b = w.coeff_of(Monomial::var(ctx.size(), v));
            if (b == 0) continue;
            if (!p) {
                // a is +-1: x_v = -rest/a
                Poly image = rest.mul_scalar(-1 / mpq_class(a));
                std::vector<std::optional<Poly>> images(ctx.size());
                for (size_t i = 0; i < ctx.size(); ++i)
                    images[i] = (i == v) ? image : Poly::variable(ctx, Q.domain(), i);
                w = w.substitute(images);
            } else {
                // Work modulo p: clear b via w - (b * a^{-1} mod p) * pivot,
                // then drop coefficients divisible by p (they lie in (p)).
                mpz_class ainv;
                mpz_invert(ainv.get_mpz_t(), a.get_num().get_mpz_t(), p->get_mpz_t());
                mpz_class c = (b.get_num() * ainv) % *p;
                Poly w2 = w - pivot.mul_scalar(mpq_class(c));
                std::vector<Term> kept;
                for (const auto& t : w2.terms())
                    if (!mpz_divisible_p(t.coeff.get_num().get_mpz_t(), p->get_mpz_t()))
                        kept.push_back(t);
                w = Poly::from_terms(ctx, Q.domain(), kept);
            }
            if (w.is_zero()) continue;
            if (w.is_constant() || w.degree() > 1) return false;
        }
        std::erase_if(work, [](const Poly& f) { return f.is_zero(); });
    }
    return true;
}

// Univariate coefficient vector of f in its single support variable,
// reduced mod p and made monic. Returns empty if f mod p is constant.
std::vector<mpz_class> univariate_mod_p(const Poly& f, const mpz_class& p, size_t* var_out) {
    std::optional<size_t> var;
    for (const auto& t : f.terms()) {
        for (size_t i = 0; i < t.mono.nvars(); ++i) {
            if (t.mono.exp(i) == 0) continue;
            if (var && *var != i) throw InputError("certificate needs a univariate generator");
            var = i;
        }
    }
    if (!var) return {};
    int deg = f.degree();
    std::vector<mpz_class> c((size_t)deg + 1, 0);
    for (const auto& t : f.terms()) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), t.coeff.get_num().get_mpz_t(), p.get_mpz_t());
        c[(size_t)t.mono.exp(*var)] = r;
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() <= 1) return {};
    mpz_class lead_inv;
    mpz_invert(lead_inv.get_mpz_t(), c.back().get_mpz_t(), p.get_mpz_t());
    for (auto& x : c) x = (x * lead_inv) % p;
    *var_out = *var;
    return c;
}

// Remainder of a by monic b over F_p (coefficient vectors, low to high).
std::vector<mpz_class> poly_mod_p_rem(std::vector<mpz_class> a, const std::vector<mpz_class>& b,
                                      const mpz_class& p) {
    while (a.size() >= b.size()) {
        mpz_class c = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) break;
    }
    return a;
}

bool check_p_plus_irreducible(const Ideal& Q) {
    if (Q.generators().size() != 2)
        throw InputError("p-plus-irreducible certificate needs exactly two generators");
    std::optional<mpz_class> p;
    std::optional<Poly> f;
    for (const auto& g : Q.generators()) {
        if (g.is_constant()) {
            p = abs(mpz_class(g.terms()[0].coeff.get_num()));
        } else {
            f = g;
        }
    }
    if (!p || !f) throw InputError("p-plus-irreducible certificate needs a constant and a polynomial");
    if (!is_prime_int(*p)) return false;
    if (*p > 64) throw InputError("p-plus-irreducible certificate: characteristic too large for the exhaustive check");

    size_t var = 0;
    std::vector<mpz_class> c = univariate_mod_p(*f, *p, &var);
    if (c.empty()) return false;  // f mod p constant: quotient is not a domain this way
    size_t deg = c.size() - 1;
    if (deg > 8) throw InputError("p-plus-irreducible certificate: degree > 8 not supported");
    if (deg == 1) return true;

    // Exhaustive trial division by monic factors of degree <= deg/2.
    std::vector<mpz_class> divisor;
    auto try_all = [&](auto&& self, size_t pos, size_t d) -> bool {
        if (pos == d) {
            divisor[d] = 1;
            return poly_mod_p_rem(c, divisor, *p).empty();
        }
        for (mpz_class v = 0; v < *p; ++v) {
            divisor[pos] = v;
            if (self(self, pos + 1, d)) return true;
        }
        return false;
    };
    for (size_t d = 1; d <= deg / 2; ++d) {
        divisor.assign(d + 1, 0);
        if (try_all(try_all, 0, d)) return false;
    }
    return true;
}

bool check_principal_irreducible(const Ideal& Q) {
    if (Q.generators().size() != 1)
        throw InputError("principal-irreducible certificate needs exactly one generator");
    const Poly& f = Q.generators()[0];
    if (f.is_constant()) throw InputError("principal-irreducible certificate: constant generator");

    std::optional<size_t> var;
    for (const auto& t : f.terms())
        for (size_t i = 0; i < t.mono.nvars(); ++i)
            if (t.mono.exp(i) != 0) {
                if (var && *var != i) throw InputError("certificate needs a univariate generator");
                var = i;
            }
    int deg = f.degree();
    if (deg > 3) throw InputError("principal-irreducible certificate: degree > 3 not supported");

    if (f.domain().kind() == DomainKind::IntegerRing) {
        mpz_class content = 0;
        for (const auto& t : f.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
                                                t.coeff.get_num().get_mpz_t());
        if (content != 1) return false;  // content kills primality of (f) in Z[x]
    }
    if (deg == 1) return true;

    // deg 2 or 3: irreducible over Q iff no rational root.
    mpz_class a0 = f.coeff_of(Monomial::one(f.context().size())).get_num();
    mpz_class an = f.leading_term().coeff.get_num();
    if (a0 == 0) return false;  // x divides f
    auto divisors = [](mpz_class n) {
        n = abs(n);
        std::vector<mpz_class> out;
        for (mpz_class d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                out.push_back(d);
                out.push_back(n / d);
            }
        return out;
    };
    for (const auto& r : divisors(a0))
        for (const auto& s : divisors(an))
            for (int sign = -1; sign <= 1; sign += 2) {
                // candidate root sign*r/s
                mpq_class root(sign * r, s);
                root.canonicalize();
                mpq_class value = 0;
                for (const auto& t : f.terms()) {
                    mpq_class pw = 1;
                    for (int e = 0; e < t.mono.exp(*var); ++e) pw *= root;
                    value += t.coeff * pw;
                }
                if (value == 0) return false;
            }
    return true;
}

}  // namespace

bool check_prime_certificate(const Ideal& Q, const PrimeCertificate& cert) {
    switch (cert.kind) {
        case PrimeCertificate::Kind::Trusted:
            return true;
        case PrimeCertificate::Kind::LinearKernel:
            return check_linear_kernel(Q);
        case PrimeCertificate::Kind::PPlusIrreducibleUnivariate:
            return check_p_plus_irreducible(Q);
        case PrimeCertificate::Kind::PrincipalIrreducibleOverQ:
            return check_principal_irreducible(Q);
    }
    throw std::logic_error("unreachable");
}

}  // namespace diffpow
