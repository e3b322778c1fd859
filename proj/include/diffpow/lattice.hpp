#ifndef DIFFPOW_LATTICE_HPP
#define DIFFPOW_LATTICE_HPP

#include "diffpow/groebner.hpp"
#include "diffpow/poly.hpp"

namespace diffpow {

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static IntMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    mpz_class& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix mul(const IntMatrix& o) const;
    bool is_zero_row(size_t i) const;
    mpz_class det() const;  // Bareiss fraction-free elimination; square only

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

/// Row Hermite normal form H = U * A with U unimodular: H is row-echelon,
/// pivots positive, entries above each pivot reduced into [0, pivot), zero
/// rows at the bottom.
struct HnfResult {
    IntMatrix H;
    IntMatrix U;
};
HnfResult hnf(const IntMatrix& A);

/// Basis of the left kernel { v : v*A = 0 } as rows. Saturated: every
/// integer kernel vector is an integer combination of the rows.
IntMatrix kernel_z(const IntMatrix& A);

/// The group I ∩ R_{<=D} of ideal elements of degree at most D, presented on
/// the monomial basis of R_{<=D} (grevlex-ascending). The basis matrix is
/// canonical: HNF over Z, scaled reduced row-echelon over Q, reduced
/// row-echelon with pivots 1 over F_p. Row vectors are polynomials.
struct TruncatedLattice {
    Context ctx;
    Domain dom;
    int degree_bound;
    std::vector<Monomial> index;
    IntMatrix basis;
};

TruncatedLattice truncated_ideal_lattice(const Ideal& I, int degree_bound);

/// Canonicalized span of arbitrary degree-<=D polynomials (same canonical
/// form as truncated_ideal_lattice uses).
TruncatedLattice lattice_from_polys(const Context& ctx, const Domain& dom, int degree_bound,
                                    const std::vector<Poly>& polys);

/// { f in R_{<=D} : vec(f) * maps[i] lies in targets[i] for all i }. Maps
/// act on coefficient row vectors over the shared monomial index; all
/// targets must share context, domain and degree bound.
TruncatedLattice preimage_lattice(const std::vector<IntMatrix>& maps,
                                  const std::vector<TruncatedLattice>& targets);

bool lattice_eq(const TruncatedLattice& a, const TruncatedLattice& b);
bool lattice_member(const TruncatedLattice& L, const Poly& f);  // pre: deg f <= bound

Poly lattice_row_poly(const TruncatedLattice& L, size_t row);

/// Coefficient row of f over the monomial index (grevlex-ascending order,
/// as produced by monomials_up_to).
std::vector<mpq_class> coefficient_row(const Poly& f, const std::vector<Monomial>& index);

}  // namespace diffpow

#endif
