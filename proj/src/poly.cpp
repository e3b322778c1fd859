#include "diffpow/poly.hpp"

#include <algorithm>
#include <sstream>

namespace diffpow {

// ---------------------------------------------------------------- Domain

Domain Domain::Fp(const mpz_class& p) {
    if (p < 2) throw InputError("prime field characteristic must be >= 2, got " + p.get_str());
    // Deterministic trial division; characteristics here are desk scale.
    for (mpz_class d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw InputError("prime field characteristic must be prime, got " + p.get_str());
    }
    return Domain(DomainKind::PrimeField, p);
}

mpq_class Domain::normalize(const mpq_class& c) const {
    switch (kind_) {
        case DomainKind::RationalField:
            return c;  // mpq_class is always canonical
        case DomainKind::IntegerRing:
            if (c.get_den() != 1) throw InputError("non-integer coefficient over the integers");
            return c;
        case DomainKind::PrimeField: {
            if (c.get_den() != 1) throw InputError("non-canonical prime field element");
            mpz_class r;
            mpz_mod(r.get_mpz_t(), c.get_num().get_mpz_t(), p_.get_mpz_t());
            return mpq_class(r);
        }
    }
    throw std::logic_error("unreachable");
}

mpq_class Domain::invert(const mpq_class& c) const {
    if (c == 0) throw InputError("division by zero coefficient");
    switch (kind_) {
        case DomainKind::RationalField:
            return 1 / c;
        case DomainKind::IntegerRing:
            throw InputError("coefficient inversion requires a field domain");
        case DomainKind::PrimeField: {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), c.get_num().get_mpz_t(), p_.get_mpz_t()))
                throw InputError("division by zero coefficient");
            return mpq_class(inv);
        }
    }
    throw std::logic_error("unreachable");
}

std::string Domain::str() const {
    switch (kind_) {
        case DomainKind::IntegerRing: return "Z";
        case DomainKind::RationalField: return "Q";
        case DomainKind::PrimeField: return "F" + p_.get_str();
    }
    return "?";
}

// ---------------------------------------------------------------- Context

Context::Context(std::vector<std::string> names) {
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw InputError("empty variable name");
        for (size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw InputError("duplicate variable name '" + names[i] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<size_t> Context::index_of(std::string_view name) const {
    for (size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exps) : e_(std::move(exps)) {
    for (int e : e_) {
        if (e < 0) throw InputError("negative exponent");
        deg_ += e;
    }
}

Monomial Monomial::var(size_t nvars, size_t i, int e) {
    std::vector<int> v(nvars, 0);
    v.at(i) = e;
    return Monomial(std::move(v));
}

bool Monomial::divides(const Monomial& m) const {
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > m.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    std::vector<int> v(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) v[i] = e_[i] + m.e_[i];
    return Monomial(std::move(v));
}

Monomial Monomial::quotient(const Monomial& m) const {
    std::vector<int> v(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) {
        v[i] = e_[i] - m.e_[i];
        if (v[i] < 0) throw InputError("monomial quotient is not a monomial");
    }
    return Monomial(std::move(v));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    std::vector<int> v(a.e_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::max(a.e_[i], b.e_[i]);
    return Monomial(std::move(v));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    std::vector<int> v(a.e_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::min(a.e_[i], b.e_[i]);
    return Monomial(std::move(v));
}

// ---------------------------------------------------------------- orders

int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // Equal degree: smaller entry at the last differing position wins.
    for (size_t i = a.nvars(); i-- > 0;) {
        if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? 1 : -1;
    }
    return 0;
}

namespace {

int lex_cmp(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i)
        if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? -1 : 1;
    return 0;
}

int block_deg(const Monomial& m, size_t lo, size_t hi) {
    int d = 0;
    for (size_t i = lo; i < hi; ++i) d += m.exp(i);
    return d;
}

// grevlex restricted to the variable range [lo, hi)
int grevlex_range_cmp(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    int da = block_deg(a, lo, hi), db = block_deg(b, lo, hi);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = hi; i-- > lo;)
        if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? 1 : -1;
    return 0;
}

}  // namespace

int Order::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::Lex:
            return lex_cmp(a, b, 0, a.nvars());
        case Kind::GrLex: {
            if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
            return lex_cmp(a, b, 0, a.nvars());
        }
        case Kind::GrevLex:
            return grevlex_cmp(a, b);
        case Kind::Block: {
            // First block dominates, so block variables are eliminated.
            if (int c = grevlex_range_cmp(a, b, 0, std::min(block_, a.nvars())); c != 0) return c;
            return grevlex_range_cmp(a, b, std::min(block_, a.nvars()), a.nvars());
        }
    }
    throw std::logic_error("unreachable");
}

std::string Order::key() const {
    switch (kind_) {
        case Kind::Lex: return "lex";
        case Kind::GrLex: return "grlex";
        case Kind::GrevLex: return "grevlex";
        case Kind::Block: return "block:" + std::to_string(block_);
    }
    return "?";
}

// ---------------------------------------------------------------- Poly

namespace {
struct MonoDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};
}  // namespace

Poly Poly::constant(const Context& ctx, const Domain& dom, const mpq_class& c) {
    return term(ctx, dom, c, Monomial::one(ctx.size()));
}

Poly Poly::variable(const Context& ctx, const Domain& dom, size_t i) {
    if (i >= ctx.size()) throw InputError("variable index out of range");
    return term(ctx, dom, 1, Monomial::var(ctx.size(), i));
}

Poly Poly::term(const Context& ctx, const Domain& dom, const mpq_class& c, const Monomial& m) {
    if (m.nvars() != ctx.size()) throw InputError("exponent vector length does not match context");
    Poly f(ctx, dom);
    mpq_class n = dom.normalize(c);
    if (n != 0) f.terms_.push_back({std::move(n), m});
    return f;
}

Poly Poly::from_terms(const Context& ctx, const Domain& dom, std::vector<Term> terms) {
    std::map<Monomial, mpq_class, MonoDesc> acc;
    for (auto& t : terms) {
        if (t.mono.nvars() != ctx.size()) throw InputError("exponent vector length does not match context");
        acc[t.mono] += t.coeff;
    }
    Poly f(ctx, dom);
    for (auto& [m, c] : acc) {
        mpq_class n = dom.normalize(c);
        if (n != 0) f.terms_.push_back({std::move(n), m});
    }
    return f;
}

mpq_class Poly::coeff_of(const Monomial& m) const {
    for (const auto& t : terms_) {
        int c = grevlex_cmp(t.mono, m);
        if (c == 0) return t.coeff;
        if (c < 0) break;
    }
    return 0;
}

const Term& Poly::leading_term() const {
    if (terms_.empty()) throw InputError("zero polynomial has no leading term");
    return terms_[0];
}

void Poly::check_compatible(const Poly& g) const {
    if (ctx_ != g.ctx_) throw InputError("polynomial context mismatch");
    if (dom_ != g.dom_) throw InputError("polynomial domain mismatch");
}

Poly Poly::operator+(const Poly& g) const {
    check_compatible(g);
    Poly r(ctx_, dom_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < g.terms_.size()) {
        int c = grevlex_cmp(terms_[i].mono, g.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(g.terms_[j++]);
        } else {
            mpq_class s = dom_.normalize(terms_[i].coeff + g.terms_[j].coeff);
            if (s != 0) r.terms_.push_back({std::move(s), terms_[i].mono});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < g.terms_.size(); ++j) r.terms_.push_back(g.terms_[j]);
    return r;
}

Poly Poly::operator-() const {
    Poly r(ctx_, dom_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({dom_.normalize(-t.coeff), t.mono});
    return r;
}

Poly Poly::operator-(const Poly& g) const { return *this + (-g); }

Poly Poly::operator*(const Poly& g) const {
    check_compatible(g);
    std::map<Monomial, mpq_class, MonoDesc> acc;
    for (const auto& a : terms_)
        for (const auto& b : g.terms_) acc[a.mono * b.mono] += a.coeff * b.coeff;
    Poly r(ctx_, dom_);
    for (auto& [m, c] : acc) {
        mpq_class n = dom_.normalize(c);
        if (n != 0) r.terms_.push_back({std::move(n), m});
    }
    return r;
}

Poly Poly::mul_term(const mpq_class& c, const Monomial& m) const {
    if (m.nvars() != ctx_.size()) throw InputError("exponent vector length does not match context");
    mpq_class n = dom_.normalize(c);
    Poly r(ctx_, dom_);
    if (n == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        mpq_class cc = dom_.normalize(t.coeff * n);
        if (cc != 0) r.terms_.push_back({std::move(cc), t.mono * m});
    }
    return r;
}

Poly Poly::mul_scalar(const mpq_class& c) const { return mul_term(c, Monomial::one(ctx_.size())); }

Poly Poly::pow(unsigned k) const {
    Poly r = constant(ctx_, dom_, 1);
    Poly base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

Poly Poly::substitute(const std::vector<std::optional<Poly>>& images) const {
    if (images.size() != ctx_.size()) throw InputError("substitution image list length does not match context");
    // Cache powers of each image as needed.
    std::vector<std::vector<Poly>> powers(ctx_.size());
    auto image_pow = [&](size_t i, int e) -> const Poly& {
        if (!images[i]) throw InputError("no substitution image for variable '" + ctx_.name(i) + "'");
        auto& cache = powers[i];
        if (cache.empty()) {
            cache.push_back(Poly::constant(images[i]->context(), images[i]->domain(), 1));
            cache.push_back(*images[i]);
        }
        while ((int)cache.size() <= e) cache.push_back(cache.back() * *images[i]);
        return cache[e];
    };

    std::optional<Poly> result;
    for (const auto& t : terms_) {
        std::optional<Poly> prod;
        for (size_t i = 0; i < ctx_.size(); ++i) {
            if (t.mono.exp(i) == 0) continue;
            const Poly& q = image_pow(i, t.mono.exp(i));
            prod = prod ? *prod * q : q;
        }
        Poly piece = prod ? prod->mul_scalar(t.coeff)
                          : Poly::constant(ctx_, dom_, t.coeff);
        result = result ? *result + piece : piece;
    }
    return result ? *result : Poly::zero(ctx_, dom_);
}

Poly Poly::divexact_integer(const mpz_class& m) const {
    if (dom_.kind() != DomainKind::IntegerRing)
        throw InputError("exact integer division requires the integer domain");
    if (m == 0) throw InputError("exact division by zero");
    Poly r(ctx_, dom_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!mpz_divisible_p(t.coeff.get_num().get_mpz_t(), m.get_mpz_t()))
            throw InputError("coefficient " + t.coeff.get_str() + " not divisible by " + m.get_str());
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), t.coeff.get_num().get_mpz_t(), m.get_mpz_t());
        r.terms_.push_back({mpq_class(q), t.mono});
    }
    return r;
}

bool Poly::operator==(const Poly& g) const {
    if (ctx_ != g.ctx_ || dom_ != g.dom_) return false;
    if (terms_.size() != g.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != g.terms_[i].coeff || terms_[i].mono != g.terms_[i].mono) return false;
    return true;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        mpq_class c = t.coeff;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool wrote_coeff = false;
        if (c != 1 || t.mono.is_one()) {
            out << c.get_str();
            wrote_coeff = true;
        }
        for (size_t i = 0; i < ctx_.size(); ++i) {
            int e = t.mono.exp(i);
            if (e == 0) continue;
            if (wrote_coeff) out << "*";
            wrote_coeff = true;
            out << ctx_.name(i);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------- helpers

std::vector<Monomial> monomials_up_to(size_t nvars, int bound) {
    if (bound < 0) return {};
    std::vector<Monomial> out;
    std::vector<int> cur(nvars, 0);
    // Depth-first enumeration, then a canonical sort.
    auto rec = [&](auto&& self, size_t i, int left) -> void {
        if (i == nvars) {
            out.push_back(Monomial(cur));
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; });
    return out;
}

mpz_class binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}

}  // namespace diffpow
