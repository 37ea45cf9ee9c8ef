#pragma once
// Exact integer and rational linear algebra: Hermite/Smith normal forms,
// saturated integer kernels, cokernel torsion, rational solving.  All
// arithmetic is arbitrary precision; intermediate entries of normal-form
// computations routinely exceed machine words even for small inputs.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monoidrep/errors.hpp"

namespace monoidrep {

using Int = mpz_class;
using Rat = mpq_class;

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        check_internal(a_.size() == rows_ * cols_, "IntMatrix: entry count mismatch");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            check_internal(rows[i].size() == c, "IntMatrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        check_internal(cols_ == o.rows_, "IntMatrix: size mismatch in product");
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    std::vector<Int> row(std::size_t i) const {
        return std::vector<Int>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    bool is_zero() const {
        for (const Int& x : a_)
            if (x != 0) return false;
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? " [" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (*this)(i, j).get_str() << (j + 1 < cols_ ? " " : "");
            os << "]" << (i + 1 < rows_ ? "\n" : "");
        }
        os << "]";
        return os.str();
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Fraction-free determinant (Bareiss).
inline Int det(const IntMatrix& m) {
    check_internal(m.rows() == m.cols(), "det: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

struct SmithForm {
    std::vector<Int> diag;   // d_1 | d_2 | ... | d_r, then zeros; size min(rows, cols)
    IntMatrix left, right;   // unimodular, left * A * right = diag matrix
    std::size_t rank = 0;    // number of nonzero diagonal entries

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const {
        IntMatrix d(rows, cols);
        for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
        return d;
    }
};

namespace detail {

// Nearest-quotient division: a = q*b + r with |r| <= |b|/2.
inline Int round_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > abs(b)) q += 1;
    return q;
}

} // namespace detail

// Smith normal form with unimodular transforms.  Pivot selection: minimal
// nonzero absolute value in the remaining submatrix, ties broken by lowest
// (row, col), so the result is deterministic for a fixed input.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm s;
    std::size_t R = m.rows(), C = m.cols();
    s.left = IntMatrix::identity(R);
    s.right = IntMatrix::identity(C);
    s.diag.assign(std::min(R, C), Int(0));
    IntMatrix a = m;

    std::size_t t = 0;
    while (t < std::min(R, C)) {
        // locate pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (a(i, j) == 0) continue;
                Int v = abs(a(i, j));
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        a.swap_rows(t, pi);
        s.left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        s.right.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a(i, t) == 0) continue;
                Int q = detail::round_div(a(i, t), a(t, t));
                if (q != 0)
                    for (std::size_t k = 0; k < C; ++k) a(i, k) -= q * a(t, k);
                for (std::size_t k = 0; k < R; ++k) s.left(i, k) -= q * s.left(t, k);
                if (a(i, t) != 0) {
                    // remainder is a strictly smaller pivot
                    a.swap_rows(t, i);
                    s.left.swap_rows(t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a(t, j) == 0) continue;
                Int q = detail::round_div(a(t, j), a(t, t));
                if (q != 0)
                    for (std::size_t k = 0; k < R; ++k) a(k, j) -= q * a(k, t);
                for (std::size_t k = 0; k < C; ++k) s.right(k, j) -= q * s.right(k, t);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    s.right.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce divisibility of the remaining block by the pivot
            bool redo = false;
            for (std::size_t i = t + 1; i < R && !redo; ++i)
                for (std::size_t j = t + 1; j < C && !redo; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        for (std::size_t k = 0; k < C; ++k) a(t, k) += a(i, k);
                        for (std::size_t k = 0; k < R; ++k) s.left(t, k) += s.left(i, k);
                        redo = true;
                    }
            if (!redo) break;
        }
        if (a(t, t) < 0) {
            for (std::size_t k = 0; k < C; ++k) a(t, k) = -a(t, k);
            for (std::size_t k = 0; k < R; ++k) s.left(t, k) = -s.left(t, k);
        }
        s.diag[t] = a(t, t);
        ++t;
    }
    s.rank = t;
    return s;
}

// Row-style Hermite normal form of the lattice spanned by the rows; zero
// rows are dropped.  Pivots are positive and entries above a pivot are
// reduced into [0, pivot).  Canonical for the row lattice.
inline IntMatrix hnf_rows(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t R = a.rows(), C = a.cols();
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        // euclidean elimination in column j below row r
        for (;;) {
            std::size_t piv = R;
            Int best;
            for (std::size_t i = r; i < R; ++i)
                if (a(i, j) != 0) {
                    Int v = abs(a(i, j));
                    if (piv == R || v < best) {
                        piv = i;
                        best = v;
                    }
                }
            if (piv == R) break;
            a.swap_rows(r, piv);
            bool done = true;
            for (std::size_t i = r + 1; i < R; ++i) {
                if (a(i, j) == 0) continue;
                Int q = detail::round_div(a(i, j), a(r, j));
                for (std::size_t k = 0; k < C; ++k) a(i, k) -= q * a(r, k);
                if (a(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, j) == 0) continue;
        if (a(r, j) < 0)
            for (std::size_t k = 0; k < C; ++k) a(r, k) = -a(r, k);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(r, j).get_mpz_t());
            if (q != 0)
                for (std::size_t k = 0; k < C; ++k) a(i, k) -= q * a(r, k);
        }
        ++r;
    }
    IntMatrix out(r, C);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < C; ++k) out(i, k) = a(i, k);
    return out;
}

inline std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

// Basis (as rows, HNF-reduced) of {x : A x^T = 0}.  The lattice of integer
// kernel vectors is saturated by construction: it is spanned by the last
// cols - rank columns of the right Smith transform, which extend to a basis
// of Z^cols.
inline IntMatrix kernel_saturated(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    std::size_t n = a.cols(), r = s.rank;
    IntMatrix k(n - r, n);
    for (std::size_t t = 0; t < n - r; ++t)
        for (std::size_t i = 0; i < n; ++i) k(t, i) = s.right(i, r + t);
    return hnf_rows(k);
}

namespace detail {

inline Int pollard_rho(const Int& n, unsigned long c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        Int diff = abs(x - y);
        if (diff == 0) return 0;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d == n ? Int(0) : d;
}

inline void factor_into(const Int& value, std::set<unsigned long>& primes) {
    Int n = value;
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (unsigned long p = 2; p <= 1000000 && Int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p == 0) {
            primes.insert(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        check_internal(n.fits_ulong_p(), "factor: prime exceeds unsigned long range");
        primes.insert(n.get_ui());
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Int d = pollard_rho(n, c);
        if (d > 1) {
            factor_into(d, primes);
            factor_into(n / d, primes);
            return;
        }
    }
}

} // namespace detail

// Primes dividing some nonzero elementary divisor of A, i.e. dividing the
// order of the torsion subgroup of coker A.
inline std::set<unsigned long> torsion_primes(const IntMatrix& a) {
    std::set<unsigned long> out;
    for (const Int& d : smith_normal_form(a).diag)
        if (d > 1) detail::factor_into(d, out);
    return out;
}

struct RatSolve {
    enum class Status { solved, inconsistent, underdetermined };
    Status status = Status::underdetermined;
    std::vector<Rat> x;
};

// Solve A x = b exactly over Q.  Requires full column rank; otherwise the
// system is reported as underdetermined regardless of consistency.
inline RatSolve solve_rational(const std::vector<std::vector<Rat>>& a_in,
                               const std::vector<Rat>& b_in) {
    std::size_t R = a_in.size(), C = R ? a_in[0].size() : 0;
    check_internal(b_in.size() == R, "solve_rational: rhs size mismatch");
    std::vector<std::vector<Rat>> a = a_in;
    std::vector<Rat> b = b_in;
    std::vector<std::size_t> pivot_row(C, R);
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t piv = r;
        while (piv < R && a[piv][j] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Rat inv = 1 / a[r][j];
        for (std::size_t k = j; k < C; ++k) a[r][k] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a[i][j] == 0) continue;
            Rat f = a[i][j];
            for (std::size_t k = j; k < C; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_row[j] = r;
        ++r;
    }
    RatSolve out;
    if (r < C) {
        out.status = RatSolve::Status::underdetermined;
        return out;
    }
    for (std::size_t i = r; i < R; ++i)
        if (b[i] != 0) {
            out.status = RatSolve::Status::inconsistent;
            return out;
        }
    out.status = RatSolve::Status::solved;
    out.x.resize(C);
    for (std::size_t j = 0; j < C; ++j) out.x[j] = b[pivot_row[j]];
    return out;
}

// Convenience: express each row of B in the row basis C (which must have
// full row rank and contain B's rows in its lattice span over Q); entries
// come back as exact rationals.
inline std::vector<std::vector<Rat>> rows_in_basis(const IntMatrix& b, const IntMatrix& basis) {
    std::size_t n = basis.cols();
    check_internal(b.cols() == n, "rows_in_basis: width mismatch");
    std::vector<std::vector<Rat>> at(n, std::vector<Rat>(basis.rows()));
    for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) at[j][i] = Rat(basis(i, j));
    std::vector<std::vector<Rat>> out;
    out.reserve(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::vector<Rat> rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = Rat(b(i, j));
        RatSolve s = solve_rational(at, rhs);
        check_internal(s.status == RatSolve::Status::solved, "rows_in_basis: row not in span");
        out.push_back(std::move(s.x));
    }
    return out;
}

} // namespace monoidrep
