#include "diffpow/lattice.hpp"

#include <algorithm>

#include "diffpow/budget.hpp"

namespace diffpow {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

bool IntMatrix::is_zero_row(size_t i) const {
    for (size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0) return false;
    return true;
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
    if (rows_ == 0) return 1;
    IntMatrix m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < rows_; ++k) {
        if (m.at(k, k) == 0) {
            size_t swap_row = k + 1;
            while (swap_row < rows_ && m.at(swap_row, k) == 0) ++swap_row;
            if (swap_row == rows_) return 0;
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < rows_; ++i)
            for (size_t j = k + 1; j < cols_; ++j) {
                mpz_class v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign * m.at(rows_ - 1, rows_ - 1);
}

// ---------------------------------------------------------------- HNF

HnfResult hnf(const IntMatrix& A) {
    IntMatrix H = A;
    IntMatrix U = IntMatrix::identity(A.rows());
    const size_t rows = A.rows(), cols = A.cols();

    auto swap_rows = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols; ++j) std::swap(H.at(a, j), H.at(b, j));
        for (size_t j = 0; j < rows; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto negate_row = [&](size_t a) {
        for (size_t j = 0; j < cols; ++j) H.at(a, j) = -H.at(a, j);
        for (size_t j = 0; j < rows; ++j) U.at(a, j) = -U.at(a, j);
    };
    auto submul_row = [&](size_t a, const mpz_class& q, size_t b) {  // row a -= q * row b
        if (q == 0) return;
        for (size_t j = 0; j < cols; ++j) H.at(a, j) -= q * H.at(b, j);
        for (size_t j = 0; j < rows; ++j) U.at(a, j) -= q * U.at(b, j);
    };

    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        // Euclidean passes: shrink entries below r until one pivot survives.
        while (true) {
            BudgetScope::charge();
            size_t nonzero = 0, min_row = rows;
            for (size_t i = r; i < rows; ++i) {
                if (H.at(i, col) == 0) continue;
                ++nonzero;
                if (min_row == rows ||
                    mpz_cmpabs(H.at(i, col).get_mpz_t(), H.at(min_row, col).get_mpz_t()) < 0)
                    min_row = i;
            }
            if (nonzero == 0) break;
            swap_rows(r, min_row);
            if (H.at(r, col) < 0) negate_row(r);
            if (nonzero == 1) {
                // pivot settled; clear entries above into [0, pivot)
                for (size_t i = 0; i < r; ++i) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
                    submul_row(i, q, r);
                }
                ++r;
                break;
            }
            for (size_t i = r + 1; i < rows; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
                submul_row(i, q, r);
            }
        }
    }
    return {std::move(H), std::move(U)};
}

IntMatrix kernel_z(const IntMatrix& A) {
    auto [H, U] = hnf(A);
    std::vector<size_t> zero_rows;
    for (size_t i = 0; i < A.rows(); ++i)
        if (H.is_zero_row(i)) zero_rows.push_back(i);
    IntMatrix K(zero_rows.size(), A.rows());
    for (size_t i = 0; i < zero_rows.size(); ++i)
        for (size_t j = 0; j < A.rows(); ++j) K.at(i, j) = U.at(zero_rows[i], j);
    // Canonicalize; rows stay a basis of the same (saturated) kernel.
    IntMatrix Hk = hnf(K).H;
    size_t nz = 0;
    while (nz < Hk.rows() && !Hk.is_zero_row(nz)) ++nz;
    IntMatrix out(nz, A.rows());
    for (size_t i = 0; i < nz; ++i)
        for (size_t j = 0; j < A.rows(); ++j) out.at(i, j) = Hk.at(i, j);
    return out;
}

// ------------------------------------------------------- field elimination

namespace {

using QRow = std::vector<mpq_class>;

// Reduced row echelon over the domain field (Q, or F_p via normalize).
// Returns the nonzero rows.
std::vector<QRow> rref(std::vector<QRow> rows, const Domain& dom) {
    if (rows.empty()) return rows;
    const size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows.size(); ++col) {
        size_t piv = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        mpq_class inv = dom.invert(rows[r][col]);
        for (auto& x : rows[r]) x = dom.normalize(x * inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            mpq_class c = rows[i][col];
            for (size_t j = 0; j < cols; ++j)
                rows[i][j] = dom.normalize(rows[i][j] - c * rows[r][j]);
        }
        ++r;
        BudgetScope::charge();
    }
    rows.resize(r);
    return rows;
}

// Left kernel over the domain field, via tracked elimination.
std::vector<QRow> kernel_field(const IntMatrix& A, const Domain& dom) {
    const size_t n = A.rows(), cols = A.cols();
    std::vector<QRow> E(n, QRow(cols)), T(n, QRow(n));
    for (size_t i = 0; i < n; ++i) {
        T[i][i] = 1;
        for (size_t j = 0; j < cols; ++j) E[i][j] = dom.normalize(mpq_class(A.at(i, j)));
    }
    size_t r = 0;
    for (size_t col = 0; col < cols && r < n; ++col) {
        size_t piv = n;
        for (size_t i = r; i < n; ++i)
            if (E[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        std::swap(E[r], E[piv]);
        std::swap(T[r], T[piv]);
        mpq_class inv = dom.invert(E[r][col]);
        for (auto& x : E[r]) x = dom.normalize(x * inv);
        for (auto& x : T[r]) x = dom.normalize(x * inv);
        for (size_t i = 0; i < n; ++i) {
            if (i == r || E[i][col] == 0) continue;
            mpq_class c = E[i][col];
            for (size_t j = 0; j < cols; ++j) E[i][j] = dom.normalize(E[i][j] - c * E[r][j]);
            for (size_t j = 0; j < n; ++j) T[i][j] = dom.normalize(T[i][j] - c * T[r][j]);
        }
        ++r;
        BudgetScope::charge();
    }
    std::vector<QRow> kernel;
    for (size_t i = r; i < n; ++i) kernel.push_back(T[i]);
    return kernel;
}

// Scale a rational row to a primitive integer row with positive leading
// entry (canonical representative of its Q-line).
std::vector<mpz_class> primitive_int_row(const QRow& row) {
    mpz_class den_lcm = 1;
    for (const auto& x : row) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> out(row.size());
    mpz_class g = 0;
    for (size_t j = 0; j < row.size(); ++j) {
        mpq_class v = row[j] * den_lcm;
        out[j] = v.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (const auto& x : out) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : out) y = -y;
        break;
    }
    return out;
}

IntMatrix canonical_basis_from_qrows(std::vector<QRow> rows, const Domain& dom, size_t cols) {
    std::vector<QRow> red = rref(std::move(rows), dom);
    IntMatrix out(red.size(), cols);
    for (size_t i = 0; i < red.size(); ++i) {
        if (dom.kind() == DomainKind::RationalField) {
            auto r = primitive_int_row(red[i]);
            for (size_t j = 0; j < cols; ++j) out.at(i, j) = r[j];
        } else {  // F_p: canonical residues straight from RREF
            for (size_t j = 0; j < cols; ++j) out.at(i, j) = red[i][j].get_num();
        }
    }
    return out;
}

IntMatrix canonical_basis_z(const IntMatrix& rows) {
    IntMatrix H = hnf(rows).H;
    size_t nz = 0;
    while (nz < H.rows() && !H.is_zero_row(nz)) ++nz;
    IntMatrix out(nz, rows.cols());
    for (size_t i = 0; i < nz; ++i)
        for (size_t j = 0; j < rows.cols(); ++j) out.at(i, j) = H.at(i, j);
    return out;
}

size_t index_position(const std::vector<Monomial>& index, const Monomial& m) {
    auto it = std::lower_bound(index.begin(), index.end(), m,
                               [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; });
    if (it == index.end() || !(*it == m)) throw InputError("monomial outside the truncation index");
    return (size_t)(it - index.begin());
}

}  // namespace

std::vector<mpq_class> coefficient_row(const Poly& f, const std::vector<Monomial>& index) {
    std::vector<mpq_class> v(index.size(), 0);
    for (const auto& t : f.terms()) v[index_position(index, t.mono)] = t.coeff;
    return v;
}

// ------------------------------------------------------ TruncatedLattice

TruncatedLattice lattice_from_polys(const Context& ctx, const Domain& dom, int degree_bound,
                                    const std::vector<Poly>& polys) {
    if (degree_bound < 0) throw InputError("negative degree bound");
    std::vector<Monomial> index = monomials_up_to(ctx.size(), degree_bound);
    for (const auto& f : polys)
        if (f.degree() > degree_bound) throw InputError("polynomial exceeds the degree bound");

    if (dom.kind() == DomainKind::IntegerRing) {
        IntMatrix rows(polys.size(), index.size());
        for (size_t i = 0; i < polys.size(); ++i) {
            auto v = coefficient_row(polys[i], index);
            for (size_t j = 0; j < index.size(); ++j) rows.at(i, j) = v[j].get_num();
        }
        return {ctx, dom, degree_bound, std::move(index), canonical_basis_z(rows)};
    }
    std::vector<QRow> rows;
    for (const auto& f : polys) rows.push_back(coefficient_row(f, index));
    IntMatrix basis = canonical_basis_from_qrows(std::move(rows), dom, index.size());
    return {ctx, dom, degree_bound, std::move(index), std::move(basis)};
}

TruncatedLattice truncated_ideal_lattice(const Ideal& I, int degree_bound) {
    // Degree-compatible order: every multiple m*g used below stays inside
    // R_{<=D}, and chains of strong reductions never leave it, so these rows
    // span the full truncated group.
    auto gb = I.groebner(Order::grevlex());
    std::vector<Poly> rows;
    for (const auto& g : gb->elements) {
        int slack = degree_bound - g.degree();
        if (slack < 0) continue;
        for (const auto& m : monomials_up_to(I.context().size(), slack))
            rows.push_back(g.mul_term(1, m));
    }
    return lattice_from_polys(I.context(), I.domain(), degree_bound, rows);
}

TruncatedLattice preimage_lattice(const std::vector<IntMatrix>& maps,
                                  const std::vector<TruncatedLattice>& targets) {
    if (maps.empty() || maps.size() != targets.size())
        throw InputError("preimage needs matching nonempty map and target lists");
    const TruncatedLattice& t0 = targets[0];
    const size_t N = t0.index.size();
    size_t extra = 0;
    for (size_t i = 0; i < targets.size(); ++i) {
        if (!(targets[i].ctx == t0.ctx) || targets[i].dom != t0.dom ||
            targets[i].degree_bound != t0.degree_bound)
            throw InputError("preimage targets disagree on context/domain/bound");
        if (maps[i].rows() != N || maps[i].cols() != N)
            throw InputError("preimage map has wrong dimensions");
        extra += targets[i].basis.rows();
    }

    // Unknown row u = (v | w_1 .. w_k); u * BIG = 0 encodes
    // v*M_i = w_i * B_i for every i.
    IntMatrix big(N + extra, N * targets.size());
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = 0; j < N; ++j)
            for (size_t c = 0; c < N; ++c) big.at(j, i * N + c) = maps[i].at(j, c);
    size_t row_off = N;
    for (size_t i = 0; i < targets.size(); ++i) {
        const IntMatrix& B = targets[i].basis;
        for (size_t r = 0; r < B.rows(); ++r)
            for (size_t c = 0; c < N; ++c) big.at(row_off + r, i * N + c) = -B.at(r, c);
        row_off += B.rows();
    }

    if (t0.dom.kind() == DomainKind::IntegerRing) {
        IntMatrix K = kernel_z(big);
        IntMatrix vpart(K.rows(), N);
        for (size_t i = 0; i < K.rows(); ++i)
            for (size_t j = 0; j < N; ++j) vpart.at(i, j) = K.at(i, j);
        return {t0.ctx, t0.dom, t0.degree_bound, t0.index, canonical_basis_z(vpart)};
    }
    std::vector<QRow> K = kernel_field(big, t0.dom);
    std::vector<QRow> vpart;
    for (auto& row : K) vpart.push_back(QRow(row.begin(), row.begin() + (long)N));
    IntMatrix basis = canonical_basis_from_qrows(std::move(vpart), t0.dom, N);
    return {t0.ctx, t0.dom, t0.degree_bound, t0.index, std::move(basis)};
}

bool lattice_eq(const TruncatedLattice& a, const TruncatedLattice& b) {
    if (!(a.ctx == b.ctx) || a.dom != b.dom || a.degree_bound != b.degree_bound) return false;
    return a.basis == b.basis;  // canonical forms
}

bool lattice_member(const TruncatedLattice& L, const Poly& f) {
    if (f.context() != L.ctx || f.domain() != L.dom)
        throw InputError("lattice membership context/domain mismatch");
    if (f.degree() > L.degree_bound) throw InputError("polynomial exceeds the degree bound");
    std::vector<mpq_class> v = coefficient_row(f, L.index);
    const IntMatrix& B = L.basis;
    const bool integral = L.dom.kind() == DomainKind::IntegerRing;
    for (size_t i = 0; i < B.rows(); ++i) {
        size_t pc = 0;
        while (pc < B.cols() && B.at(i, pc) == 0) ++pc;
        if (pc == B.cols() || v[pc] == 0) continue;
        mpq_class q;
        if (integral) {
            if (!mpz_divisible_p(v[pc].get_num().get_mpz_t(), B.at(i, pc).get_mpz_t())) return false;
            mpz_class qq;
            mpz_divexact(qq.get_mpz_t(), v[pc].get_num().get_mpz_t(), B.at(i, pc).get_mpz_t());
            q = mpq_class(qq);
        } else {
            q = L.dom.normalize(v[pc] * L.dom.invert(mpq_class(B.at(i, pc))));
        }
        for (size_t j = pc; j < B.cols(); ++j)
            v[j] = L.dom.normalize(v[j] - q * mpq_class(B.at(i, j)));
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Poly lattice_row_poly(const TruncatedLattice& L, size_t row) {
    if (row >= L.basis.rows()) throw InputError("lattice row out of range");
    std::vector<Term> ts;
    for (size_t j = 0; j < L.basis.cols(); ++j)
        if (L.basis.at(row, j) != 0) ts.push_back({mpq_class(L.basis.at(row, j)), L.index[j]});
    return Poly::from_terms(L.ctx, L.dom, std::move(ts));
}

}  // namespace diffpow
