#ifndef DIFFPOW_GROEBNER_HPP
#define DIFFPOW_GROEBNER_HPP

#include <memory>
#include <mutex>
#include <utility>

#include "diffpow/poly.hpp"

namespace diffpow {

/// Groebner basis for a fixed order. Over Z this is a *strong* basis: every
/// ideal element has some basis element whose leading term divides its
/// leading term (coefficient included), so normal_form == 0 decides
/// membership exactly, just as over a field.
struct GroebnerBasis {
    std::vector<Poly> elements;  // inter-reduced, deterministic given the order
    Order order;
    bool strong;  // true over Z; fields make every basis trivially strong
};

/// Finitely generated ideal of R = D[x_1..x_k]. Immutable; Groebner bases
/// are computed on demand and cached per order (copies share the cache).
class Ideal {
public:
    Ideal(Context ctx, Domain dom, std::vector<Poly> gens);

    const Context& context() const { return ctx_; }
    const Domain& domain() const { return dom_; }
    const std::vector<Poly>& generators() const { return gens_; }

    std::shared_ptr<const GroebnerBasis> groebner(const Order& ord = Order::grevlex()) const;

private:
    Context ctx_;
    Domain dom_;
    std::vector<Poly> gens_;  // nonzero, sign-normalized over Z
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// Fully reduced remainder of f modulo gb. Zero iff f lies in the ideal
/// (requires a strong basis over Z, which groebner() always produces).
Poly normal_form(const Poly& f, const GroebnerBasis& gb);

bool contains(const Ideal& I, const Poly& f);

/// Quotient q with q * f == g. Throws InputError if f does not divide g.
Poly poly_divexact(const Poly& g, const Poly& f);

/// (I : f) = { g : g*f in I }, computed by intersecting with (f) via an
/// elimination order and dividing the generators by f. Pre: f != 0.
Ideal colon(const Ideal& I, const Poly& f);

/// (I : f^inf) together with the first exponent k where the chain
/// (I : f^k) stabilizes.
std::pair<Ideal, int> saturation(const Ideal& I, const Poly& f);

Ideal intersect(const Ideal& I, const Ideal& J);

/// True iff J is contained in I.
bool ideal_contains(const Ideal& I, const Ideal& J);
bool ideal_eq(const Ideal& I, const Ideal& J);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_power(const Ideal& I, int n);  // n >= 0; n == 0 gives (1)

/// Evidence that an ideal is prime. Checking validates the certificate
/// against the generators; a Trusted certificate is accepted as-is and
/// callers must surface that fact in reports.
struct PrimeCertificate {
    enum class Kind {
        Trusted,
        LinearKernel,                 // prime p (optional) + unimodular linear forms
        PPlusIrreducibleUnivariate,   // (p, f) with f irreducible mod p, deg <= 8
        PrincipalIrreducibleOverQ,    // (f) with f primitive univariate, irreducible over Q
    };
    Kind kind = Kind::Trusted;

    std::string str() const;
    static PrimeCertificate from_string(std::string_view s);
};

/// True iff the certificate's criterion holds for Q's generators. Throws
/// InputError when the generators do not even have the shape the
/// certificate kind talks about.
bool check_prime_certificate(const Ideal& Q, const PrimeCertificate& cert);

}  // namespace diffpow

#endif
