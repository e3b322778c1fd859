#include "diffpow/pderiv.hpp"

#include "diffpow/budget.hpp"

namespace diffpow {

namespace {

unsigned long validated_prime(const mpz_class& p) {
    (void)Domain::Fp(p);  // primality and p >= 2
    if (!mpz_fits_ulong_p(p.get_mpz_t())) throw InputError("prime too large");
    return p.get_ui();
}

void require_integer_poly(const Poly& f, const Context& ctx) {
    if (f.context() != ctx) throw InputError("polynomial context mismatch");
    if (f.domain().kind() != DomainKind::IntegerRing)
        throw InputError("p-derivation arithmetic needs integer coefficients");
}

}  // namespace

FrobeniusLift::FrobeniusLift(Context ctx, const mpz_class& p, std::vector<Poly> images)
    : ctx_(std::move(ctx)), p_(p), p_ui_(validated_prime(p)), images_(std::move(images)) {
    if (images_.size() != ctx_.size())
        throw InputError("a Frobenius lift needs an image for every variable");
    for (size_t i = 0; i < images_.size(); ++i) {
        require_integer_poly(images_[i], ctx_);
        Poly residue = images_[i] - Poly::variable(ctx_, Domain::ZZ(), i).pow((unsigned)p_ui_);
        for (const Term& t : residue.terms())
            if (!mpz_divisible_p(t.coeff.get_num().get_mpz_t(), p_.get_mpz_t()))
                throw InputError("lift image of " + ctx_.name(i) + " is not " + ctx_.name(i) +
                                 "^" + p_.get_str() + " modulo " + p_.get_str());
    }
}

FrobeniusLift FrobeniusLift::canonical(const Context& ctx, const mpz_class& p) {
    unsigned long pu = validated_prime(p);
    std::vector<Poly> images;
    for (size_t i = 0; i < ctx.size(); ++i)
        images.push_back(Poly::variable(ctx, Domain::ZZ(), i).pow((unsigned)pu));
    return FrobeniusLift(ctx, p, std::move(images));
}

Poly FrobeniusLift::apply(const Poly& f) const {
    require_integer_poly(f, ctx_);
    std::vector<std::optional<Poly>> imgs(images_.begin(), images_.end());
    return f.substitute(imgs);
}

std::string FrobeniusLift::str() const {
    std::string s;
    for (size_t i = 0; i < ctx_.size(); ++i) {
        if (i) s += ", ";
        s += ctx_.name(i) + " -> " + images_[i].str();
    }
    return s;
}

PDerivation::PDerivation(FrobeniusLift lift) : lift_(std::move(lift)) {
    const Context& ctx = lift_.context();
    Domain z = Domain::ZZ();
    std::vector<std::pair<Poly, Poly>> samples;
    samples.emplace_back(Poly::constant(ctx, z, 2), Poly::constant(ctx, z, 3));
    if (ctx.size() > 0) {
        Poly x = Poly::variable(ctx, z, 0);
        samples.emplace_back(x + Poly::constant(ctx, z, 1), x - Poly::constant(ctx, z, 2));
        samples.emplace_back(x, Poly::constant(ctx, z, lift_.p()));
    }
    if (!verify_axioms(*this, samples).ok())
        throw std::logic_error("p-derivation axioms failed on the construction sample");
}

Poly PDerivation::derive(const Poly& f) const {
    require_integer_poly(f, lift_.context());
    BudgetScope::charge(1 + (int64_t)f.term_count());
    return (lift_.apply(f) - f.pow((unsigned)lift_.p_ui())).divexact_integer(lift_.p());
}

Poly PDerivation::iterate(int a, const Poly& f) const {
    if (a < 0) throw InputError("negative iteration count");
    Poly g = f;
    for (int i = 0; i < a; ++i) g = derive(g);
    return g;
}

mpz_class fermat_quotient(const mpz_class& m, const mpz_class& p) {
    unsigned long pu = validated_prime(p);
    mpz_class mp;
    mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), pu);
    mpz_class diff = m - mp;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), diff.get_mpz_t(), p.get_mpz_t());
    return q;
}

Poly cp(const Poly& f, const Poly& g, const mpz_class& p) {
    unsigned long pu = validated_prime(p);
    require_integer_poly(f, f.context());
    require_integer_poly(g, f.context());
    return (f.pow((unsigned)pu) + g.pow((unsigned)pu) - (f + g).pow((unsigned)pu))
        .divexact_integer(p);
}

AxiomReport verify_axioms(const PDerivation& d, const std::vector<std::pair<Poly, Poly>>& samples) {
    AxiomReport report;
    const mpz_class& p = d.p();
    for (const auto& [f, g] : samples) {
        ++report.pairs_checked;
        Poly df = d.derive(f), dg = d.derive(g);
        Poly prod_lhs = d.derive(f * g);
        Poly prod_rhs = f.pow((unsigned)d.lift().p_ui()) * dg +
                        g.pow((unsigned)d.lift().p_ui()) * df + df.mul_scalar(p) * dg;
        if (prod_lhs != prod_rhs)
            report.violations.push_back({"product", f, g, prod_lhs - prod_rhs});
        Poly sum_lhs = d.derive(f + g);
        Poly sum_rhs = df + dg + cp(f, g, p);
        if (sum_lhs != sum_rhs) report.violations.push_back({"sum", f, g, sum_lhs - sum_rhs});
    }
    return report;
}

bool pder_power_membership(const Ideal& I, int n, const PDerivation& d, const Poly& f) {
    if (n < 1) throw InputError("p-differential power level must be >= 1");
    if (I.context() != d.context()) throw InputError("derivation context does not match the ideal");
    require_integer_poly(f, I.context());
    if (I.domain().kind() != DomainKind::IntegerRing)
        throw InputError("p-differential powers live over integer coefficients");
    Poly g = f;
    for (int a = 0; a < n; ++a) {
        if (!contains(I, g)) return false;
        if (a + 1 < n) g = d.derive(g);
    }
    return true;
}

}  // namespace diffpow
