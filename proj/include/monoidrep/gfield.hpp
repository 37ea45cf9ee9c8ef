#pragma once
// Arithmetic in F_{p^d} for small fields (p^d bounded, default 2^20) and
// dense matrix algebra over them.  Elements are stored as integer codes
// whose base-p digits are the coefficients of the residue polynomial, low
// degree first; multiplication goes through discrete-log tables built from
// a fixed generator at construction time.

#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monoidrep/errors.hpp"

namespace monoidrep {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

namespace fpoly {

// Dense polynomials over the prime field F_p, coefficients low-to-high.
using Poly = std::vector<u64>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim(c);
    return c;
}

inline u64 inv_mod(u64 a, u64 p) {
    // extended euclid; p prime
    long long t = 0, nt = 1, r = (long long)p, nr = (long long)(a % p);
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return (u64)(t < 0 ? t + (long long)p : t);
}

inline Poly mod(Poly a, const Poly& f, u64 p) {
    check_internal(!f.empty(), "fpoly::mod by zero");
    u64 lead_inv = inv_mod(f.back(), p);
    while (a.size() >= f.size()) {
        u64 c = a.back() * lead_inv % p;
        if (c != 0) {
            std::size_t off = a.size() - f.size();
            for (std::size_t i = 0; i < f.size(); ++i)
                a[off + i] = (a[off + i] + p * p - c * f[i] % p) % p;
        }
        a.pop_back();
        trim(a);
        if (a.size() < f.size()) break;
    }
    trim(a);
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    return mod(mul(a, b, p), f, p);
}

inline Poly powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    base = mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = mulmod(r, base, f, p);
        base = mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 li = inv_mod(a.back(), p);
        for (u64& c : a) c = c * li % p;
    }
    return a;
}

// Rabin irreducibility test for a monic polynomial of degree d over F_p.
inline bool irreducible(const Poly& f, u64 p) {
    std::size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    // x^{p^i} mod f by iterated p-th powers
    std::vector<Poly> xp(d + 1);
    xp[0] = {0, 1};
    for (std::size_t i = 1; i <= d; ++i) xp[i] = powmod(xp[i - 1], p, f, p);
    Poly t = xp[d];
    // x^{p^d} == x mod f
    if (mod(Poly{0, 1}, f, p) != t) {
        Poly diff = t;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (!diff.empty()) return false;
    }
    // gcd(x^{p^{d/r}} - x, f) == 1 for each prime r | d
    std::size_t dd = d;
    for (std::size_t r = 2; r * r <= dd; ++r)
        while (dd % r == 0) {
            Poly g = xp[d / r];
            g.resize(std::max<std::size_t>(g.size(), 2), 0);
            g[1] = (g[1] + p - 1) % p;
            trim(g);
            if (gcd(g, f, p).size() != 1) return false;
            while (dd % r == 0) dd /= r;
        }
    if (dd > 1) {
        Poly g = xp[d / dd];
        g.resize(std::max<std::size_t>(g.size(), 2), 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        if (gcd(g, f, p).size() != 1) return false;
    }
    return true;
}

} // namespace fpoly

inline bool is_prime_ulong(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::set<u64> prime_divisors(u64 n) {
    std::set<u64> out;
    for (u64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out.insert(d);
            n /= d;
        }
    if (n > 1) out.insert(n);
    return out;
}

class GFContext {
  public:
    // Deterministic field: the modulus is the lexicographically smallest
    // monic irreducible of degree d (coefficients compared low-to-high) and
    // the generator is the smallest code of multiplicative order p^d - 1.
    static std::shared_ptr<const GFContext> make(u64 p, u32 d, u64 bound = u64(1) << 20) {
        check_input(is_prime_ulong(p), "make_field: not prime");
        check_input(d >= 1, "make_field: degree must be positive");
        u64 q = 1;
        for (u32 i = 0; i < d; ++i) {
            q *= p;
            check_input(q <= bound, "make_field: field too large");
        }
        return std::shared_ptr<const GFContext>(new GFContext(p, d, q));
    }

    u64 p() const { return p_; }
    u32 degree() const { return d_; }
    u64 q() const { return q_; }
    const std::vector<u64>& modulus() const { return modulus_; }
    u32 generator() const { return generator_; }

    u32 add(u32 a, u32 b) const {
        if (p_ == 2) return a ^ b;
        if (d_ == 1) return u32((a + u64(b)) % p_);
        u32 r = 0, mul = 1;
        for (u32 i = 0; i < d_; ++i) {
            r += u32((a % p_ + u64(b % p_)) % p_) * mul;
            a /= u32(p_);
            b /= u32(p_);
            mul *= u32(p_);
        }
        return r;
    }
    u32 neg(u32 a) const {
        if (p_ == 2) return a;
        if (d_ == 1) return a == 0 ? 0 : u32(p_ - a);
        u32 r = 0, mul = 1;
        for (u32 i = 0; i < d_; ++i) {
            u32 c = a % u32(p_);
            r += (c == 0 ? 0 : u32(p_) - c) * mul;
            a /= u32(p_);
            mul *= u32(p_);
        }
        return r;
    }
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        u64 e = u64(log_[a]) + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }
    u32 inv(u32 a) const {
        check_input(a != 0, "field inverse: zero element");
        u64 e = log_[a];
        return exp_[e == 0 ? 0 : q_ - 1 - e];
    }
    u32 pow(u32 a, long long e) const {
        if (a == 0) {
            check_internal(e > 0, "pow: 0^e with e <= 0");
            return 0;
        }
        long long m = (long long)(q_ - 1);
        long long k = ((long long)log_[a] * (e % m)) % m;
        if (k < 0) k += m;
        return exp_[k];
    }
    u32 from_int(long long v) const {
        long long r = v % (long long)p_;
        if (r < 0) r += (long long)p_;
        return u32(r);
    }

    // k with generator^k = u, 0 <= k < q - 1
    u64 discrete_log_unit(u32 u) const {
        check_input(u != 0, "discrete_log_unit: zero element");
        return log_[u];
    }

    std::string elem_str(u32 a) const {
        if (d_ == 1) return std::to_string(a);
        std::ostringstream os;
        os << a << "#"; // code, then coefficient vector
        u32 v = a;
        for (u32 i = 0; i < d_; ++i) {
            os << v % p_ << (i + 1 < d_ ? "," : "");
            v /= u32(p_);
        }
        return os.str();
    }

  private:
    GFContext(u64 p, u32 d, u64 q) : p_(p), d_(d), q_(q) {
        find_modulus();
        log_.assign(q_, 0);
        exp_.assign(q_ - 1, 0);
        find_generator();
    }

    // raw product of coefficient codes via polynomial multiplication mod
    // the modulus; used only while bootstrapping the log tables
    u32 raw_mul(u32 a, u32 b) const {
        fpoly::Poly pa = decode(a), pb = decode(b);
        return encode(fpoly::mod(fpoly::mul(pa, pb, p_), modulus_, p_));
    }
    fpoly::Poly decode(u32 a) const {
        fpoly::Poly f;
        while (a) {
            f.push_back(a % p_);
            a /= u32(p_);
        }
        return f;
    }
    u32 encode(const fpoly::Poly& f) const {
        u64 v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = v * p_ + f[i];
        return u32(v);
    }

    void find_modulus() {
        if (d_ == 1) {
            modulus_ = {0, 1}; // x
            return;
        }
        // enumerate constant coefficient first = most significant digit
        std::vector<u64> c(d_, 0);
        for (;;) {
            fpoly::Poly f(d_ + 1, 0);
            f[d_] = 1;
            for (u32 i = 0; i < d_; ++i) f[i] = c[i];
            if (fpoly::irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
            u32 i = d_;
            while (i-- > 0) {
                if (++c[i] < p_) break;
                c[i] = 0;
                check_internal(i != 0, "find_modulus: no irreducible found");
            }
        }
    }

    void find_generator() {
        std::set<u64> ell = prime_divisors(q_ - 1);
        auto raw_pow = [&](u32 a, u64 e) {
            u32 r = 1;
            while (e) {
                if (e & 1) r = raw_mul(r, a);
                a = raw_mul(a, a);
                e >>= 1;
            }
            return r;
        };
        for (u32 u = 1; u < q_; ++u) {
            bool ok = true;
            for (u64 l : ell)
                if (raw_pow(u, (q_ - 1) / l) == 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            generator_ = u;
            u32 x = 1;
            for (u64 k = 0; k < q_ - 1; ++k) {
                exp_[k] = x;
                log_[x] = k;
                x = raw_mul(x, u);
            }
            check_internal(x == 1, "generator order mismatch");
            return;
        }
        throw internal_error("no generator found");
    }

    u64 p_;
    u32 d_;
    u64 q_;
    std::vector<u64> modulus_;
    u32 generator_ = 1;
    std::vector<u64> log_;
    std::vector<u32> exp_;
};

using GF = std::shared_ptr<const GFContext>;

class GFMatrix {
  public:
    GFMatrix() : rows_(0), cols_(0) {}
    GFMatrix(GF F, std::size_t rows, std::size_t cols)
        : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static GFMatrix identity(GF F, std::size_t n) {
        GFMatrix m(F, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    GF field() const { return F_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    u32& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    u32 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    bool operator==(const GFMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    GFMatrix operator*(const GFMatrix& o) const {
        check_input(cols_ == o.rows_, "GFMatrix: dimension mismatch");
        GFMatrix r(F_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                u32 x = (*this)(i, k);
                if (!x) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    u32 y = o(k, j);
                    if (y) r(i, j) = F_->add(r(i, j), F_->mul(x, y));
                }
            }
        return r;
    }

    GFMatrix operator+(const GFMatrix& o) const {
        check_input(rows_ == o.rows_ && cols_ == o.cols_, "GFMatrix: dimension mismatch");
        GFMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(r.a_[i], o.a_[i]);
        return r;
    }

    GFMatrix operator-(const GFMatrix& o) const {
        check_input(rows_ == o.rows_ && cols_ == o.cols_, "GFMatrix: dimension mismatch");
        GFMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(r.a_[i], o.a_[i]);
        return r;
    }

    GFMatrix scaled(u32 c) const {
        GFMatrix r = *this;
        for (u32& x : r.a_) x = F_->mul(x, c);
        return r;
    }

    GFMatrix transpose() const {
        GFMatrix t(F_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<u32> apply(const std::vector<u32>& v) const {
        check_input(v.size() == cols_, "GFMatrix: vector length mismatch");
        std::vector<u32> r(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            u32 acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                u32 x = (*this)(i, j);
                if (x && v[j]) acc = F_->add(acc, F_->mul(x, v[j]));
            }
            r[i] = acc;
        }
        return r;
    }

    GFMatrix pow(u64 e) const {
        check_input(rows_ == cols_, "GFMatrix::pow: not square");
        GFMatrix r = identity(F_, rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool is_zero() const {
        for (u32 x : a_)
            if (x) return false;
        return true;
    }

    u32 trace() const {
        u32 t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t = F_->add(t, (*this)(i, i));
        return t;
    }

    std::vector<u32> row(std::size_t i) const {
        return std::vector<u32>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                os << F_->elem_str((*this)(i, j)) << (j + 1 < cols_ ? " " : "");
            os << "\n";
        }
        return os.str();
    }

  private:
    GF F_;
    std::size_t rows_, cols_;
    std::vector<u32> a_;
};

struct Echelon {
    std::vector<std::size_t> pivots; // pivot column per row
    GFMatrix mat;                    // reduced row echelon form, zero rows dropped
};

// Deterministic RREF: first nonzero column, lowest row.
inline Echelon rref(const GFMatrix& m) {
    GF F = m.field();
    GFMatrix a = m;
    std::size_t R = a.rows(), C = a.cols(), r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t piv = r;
        while (piv < R && a(piv, j) == 0) ++piv;
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t k = 0; k < C; ++k) std::swap(a(piv, k), a(r, k));
        u32 inv = F->inv(a(r, j));
        for (std::size_t k = j; k < C; ++k) a(r, k) = F->mul(a(r, k), inv);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a(i, j) == 0) continue;
            u32 f = a(i, j);
            for (std::size_t k = j; k < C; ++k)
                a(i, k) = F->sub(a(i, k), F->mul(f, a(r, k)));
        }
        pivots.push_back(j);
        ++r;
    }
    Echelon e;
    e.pivots = pivots;
    e.mat = GFMatrix(F, r, C);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < C; ++k) e.mat(i, k) = a(i, k);
    return e;
}

inline std::size_t rank(const GFMatrix& m) { return rref(m).pivots.size(); }

// Basis (rows) of {x : M x = 0}; one vector per free column, ascending.
inline GFMatrix kernel(const GFMatrix& m) {
    GF F = m.field();
    Echelon e = rref(m);
    std::size_t C = m.cols();
    std::vector<char> is_pivot(C, 0);
    for (std::size_t j : e.pivots) is_pivot[j] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < C; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    GFMatrix k(F, free_cols.size(), C);
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        std::size_t fc = free_cols[t];
        k(t, fc) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            k(t, e.pivots[i]) = F->neg(e.mat(i, fc));
    }
    return k;
}

// Unique solution of M x = b when it exists (M need not be square).
inline std::optional<std::vector<u32>> solve(const GFMatrix& m, const std::vector<u32>& b) {
    GF F = m.field();
    check_input(b.size() == m.rows(), "solve: rhs length mismatch");
    GFMatrix aug(F, m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = rref(aug);
    std::vector<u32> x(m.cols(), 0);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt; // inconsistent
        x[e.pivots[i]] = e.mat(i, m.cols());
    }
    return x;
}

// Dimension of the generalized eigenspace ker (A - lambda I)^n.
inline std::size_t eigen_multiplicity(const GFMatrix& a, u32 lambda) {
    check_input(a.rows() == a.cols(), "eigen_multiplicity: dimension mismatch");
    GF F = a.field();
    std::size_t n = a.rows();
    if (n == 0) return 0;
    GFMatrix b = a - GFMatrix::identity(F, n).scaled(lambda);
    GFMatrix bn = b.pow(n);
    return n - rank(bn);
}

} // namespace monoidrep
