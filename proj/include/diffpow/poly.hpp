#ifndef DIFFPOW_POLY_HPP
#define DIFFPOW_POLY_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diffpow {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a step budget runs out. Never a wrong answer.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int col)
        : InputError(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

enum class DomainKind { IntegerRing, RationalField, PrimeField };

/// Coefficient domain: Z, Q, or F_p. All arithmetic is exact; F_p elements
/// are canonical residues in [0, p).
class Domain {
public:
    static Domain ZZ() { return Domain(DomainKind::IntegerRing, 0); }
    static Domain QQ() { return Domain(DomainKind::RationalField, 0); }
    static Domain Fp(const mpz_class& p);  // verifies p prime, p >= 2

    DomainKind kind() const { return kind_; }
    bool is_field() const { return kind_ != DomainKind::IntegerRing; }
    const mpz_class& p() const { return p_; }

    // Canonical representative of c in this domain. Throws InputError if c
    // has a denominator outside a field domain.
    mpq_class normalize(const mpq_class& c) const;
    mpq_class invert(const mpq_class& c) const;  // fields only, c != 0

    bool operator==(const Domain& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Domain& o) const { return !(*this == o); }

    std::string str() const;

private:
    Domain(DomainKind k, mpz_class p) : kind_(k), p_(std::move(p)) {}
    DomainKind kind_;
    mpz_class p_;
};

/// Ordered list of distinct variable names, fixed for the lifetime of every
/// polynomial built over it. Cheap to copy; equality is by name list.
class Context {
public:
    Context() : names_(std::make_shared<const std::vector<std::string>>()) {}
    explicit Context(std::vector<std::string> names);

    size_t size() const { return names_->size(); }
    const std::string& name(size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }
    std::optional<size_t> index_of(std::string_view name) const;

    bool operator==(const Context& o) const {
        return names_ == o.names_ || *names_ == *o.names_;
    }
    bool operator!=(const Context& o) const { return !(*this == o); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector, one entry per context variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps);
    static Monomial one(size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }
    static Monomial var(size_t nvars, size_t i, int e = 1);

    size_t nvars() const { return e_.size(); }
    int exp(size_t i) const { return e_[i]; }
    int degree() const { return deg_; }
    const std::vector<int>& exps() const { return e_; }
    bool is_one() const { return deg_ == 0; }

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    Monomial quotient(const Monomial& m) const;  // pre: m.divides(*this)
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static Monomial gcd(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

private:
    std::vector<int> e_;
    int deg_ = 0;
};

// Fixed internal term order: graded reverse lexicographic. Returns -1/0/+1.
int grevlex_cmp(const Monomial& a, const Monomial& b);

/// Monomial order used by Groebner computations. EliminationBlock compares a
/// leading variable block first, so it eliminates that block.
class Order {
public:
    enum class Kind { Lex, GrLex, GrevLex, Block };

    static Order lex() { return Order(Kind::Lex, 0); }
    static Order grlex() { return Order(Kind::GrLex, 0); }
    static Order grevlex() { return Order(Kind::GrevLex, 0); }
    static Order block(size_t first_block) { return Order(Kind::Block, first_block); }

    Kind kind() const { return kind_; }
    size_t block_split() const { return block_; }
    bool degree_compatible() const { return kind_ == Kind::GrLex || kind_ == Kind::GrevLex; }

    int compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string key() const;  // stable identifier, used as GB cache key

private:
    Order(Kind k, size_t b) : kind_(k), block_(b) {}
    Kind kind_;
    size_t block_;
};

struct Term {
    mpq_class coeff;
    Monomial mono;
};

/// Sparse exact multivariate polynomial in canonical form: terms strictly
/// decreasing in grevlex, no zero coefficients, coefficients normalized for
/// the domain. Immutable after construction.
class Poly {
public:
    Poly() = default;
    Poly(Context ctx, Domain dom) : ctx_(std::move(ctx)), dom_(std::move(dom)) {}

    static Poly zero(const Context& ctx, const Domain& dom) { return Poly(ctx, dom); }
    static Poly constant(const Context& ctx, const Domain& dom, const mpq_class& c);
    static Poly variable(const Context& ctx, const Domain& dom, size_t i);
    static Poly term(const Context& ctx, const Domain& dom, const mpq_class& c, const Monomial& m);
    // Canonicalizes: merges equal monomials, drops zeros, sorts.
    static Poly from_terms(const Context& ctx, const Domain& dom, std::vector<Term> terms);

    const Context& context() const { return ctx_; }
    const Domain& domain() const { return dom_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].mono.is_one(); }
    size_t term_count() const { return terms_.size(); }
    int degree() const { return terms_.empty() ? -1 : terms_[0].mono.degree(); }
    mpq_class coeff_of(const Monomial& m) const;
    const Term& leading_term() const;  // pre: nonzero

    Poly operator+(const Poly& g) const;
    Poly operator-(const Poly& g) const;
    Poly operator-() const;
    Poly operator*(const Poly& g) const;
    Poly mul_term(const mpq_class& c, const Monomial& m) const;
    Poly mul_scalar(const mpq_class& c) const;
    Poly pow(unsigned k) const;

    // Ring-homomorphism evaluation, identity on coefficients. images[i] is
    // the image of variable i; a variable that actually appears in the
    // polynomial must have one.
    Poly substitute(const std::vector<std::optional<Poly>>& images) const;

    // g with m*g == *this. IntegerRing only; throws InputError if some
    // coefficient is not divisible by m.
    Poly divexact_integer(const mpz_class& m) const;

    bool operator==(const Poly& g) const;
    bool operator!=(const Poly& g) const { return !(*this == g); }

    std::string str() const;

private:
    void check_compatible(const Poly& g) const;
    std::vector<Term> terms_;
    Context ctx_;
    Domain dom_ = Domain::ZZ();
};

/// Parses the polynomial text grammar: integer literals, variable names,
/// binary + - *, unary -, ^ with nonnegative integer exponent, parentheses.
/// No implicit multiplication.
Poly parse_poly(std::string_view text, const Context& ctx, const Domain& dom);

// All monomials of total degree <= bound, grevlex-ascending. Deterministic.
std::vector<Monomial> monomials_up_to(size_t nvars, int bound);

mpz_class binomial(int n, int k);

}  // namespace diffpow

#endif
