#pragma once
// Univariate polynomials over F_q (element codes from GFContext): division,
// gcd, modular powering with large exponents, squarefree/distinct-degree/
// equal-degree factorization, and minimal polynomials of matrices.  The
// equal-degree stage is Cantor-Zassenhaus: randomized but Las Vegas, so the
// factor set is always correct; callers supply the PRNG.

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <vector>

#include "monoidrep/gfield.hpp"

namespace monoidrep::gq {

using QPoly = std::vector<u32>; // coefficients low-to-high

inline void trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int degree(const QPoly& f) { return int(f.size()) - 1; }

inline QPoly add(const GF& F, QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F->add(a[i], b[i]);
    trim(a);
    return a;
}

inline QPoly sub(const GF& F, QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F->sub(a[i], b[i]);
    trim(a);
    return a;
}

inline QPoly mul(const GF& F, const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) c[i + j] = F->add(c[i + j], F->mul(a[i], b[j]));
    }
    trim(c);
    return c;
}

inline void make_monic(const GF& F, QPoly& f) {
    trim(f);
    if (f.empty() || f.back() == 1) return;
    u32 inv = F->inv(f.back());
    for (u32& c : f) c = F->mul(c, inv);
}

inline std::pair<QPoly, QPoly> divmod(const GF& F, QPoly a, const QPoly& b) {
    check_internal(!b.empty(), "gq::divmod by zero");
    u32 li = F->inv(b.back());
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        u32 c = F->mul(a.back(), li);
        std::size_t off = a.size() - b.size();
        if (c) {
            q[off] = c;
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = F->sub(a[off + i], F->mul(c, b[i]));
        }
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline QPoly mod(const GF& F, QPoly a, const QPoly& b) { return divmod(F, std::move(a), b).second; }
inline QPoly div_exact(const GF& F, QPoly a, const QPoly& b) {
    auto [q, r] = divmod(F, std::move(a), b);
    check_internal(r.empty(), "gq::div_exact: nonzero remainder");
    return q;
}

inline QPoly gcd(const GF& F, QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(F, a);
    return a;
}

inline QPoly lcm(const GF& F, const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly g = gcd(F, a, b);
    QPoly l = div_exact(F, mul(F, a, b), g);
    make_monic(F, l);
    return l;
}

inline QPoly mulmod(const GF& F, const QPoly& a, const QPoly& b, const QPoly& m) {
    return mod(F, mul(F, a, b), m);
}

inline QPoly powmod(const GF& F, QPoly base, const mpz_class& e, const QPoly& m) {
    QPoly r{1};
    base = mod(F, std::move(base), m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(F, r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(F, r, base, m);
    }
    return r;
}

inline QPoly derivative(const GF& F, const QPoly& f) {
    QPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) {
        u32 c = 0;
        for (u64 k = 0; k < i % F->p(); ++k) c = F->add(c, f[i]); // i * f[i] in char p
        // faster: i mod p copies
        d.push_back(c);
    }
    trim(d);
    return d;
}

// p-th root coefficientwise: a^(q/p) is the inverse of Frobenius on F_q.
inline QPoly pth_root(const GF& F, const QPoly& f) {
    u64 e = F->q() / F->p();
    QPoly g;
    for (std::size_t i = 0; i < f.size(); i += std::size_t(F->p())) {
        u32 c = f[i];
        g.push_back(c == 0 ? 0 : F->pow(c, (long long)e));
    }
    trim(g);
    return g;
}

namespace detail {

inline QPoly random_poly(const GF& F, std::size_t deg_below, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> d(0, F->q() - 1);
    QPoly r(deg_below);
    for (u32& c : r) c = u32(d(rng));
    trim(r);
    return r;
}

// split a squarefree product of irreducibles all of degree k
inline void equal_degree(const GF& F, QPoly f, std::size_t k, std::mt19937_64& rng,
                         std::vector<QPoly>& out) {
    make_monic(F, f);
    if (degree(f) == int(k)) {
        out.push_back(f);
        return;
    }
    for (;;) {
        QPoly r = random_poly(F, f.size() - 1, rng);
        if (degree(r) < 1) continue;
        QPoly d;
        if (F->p() == 2) {
            // trace map: r + r^2 + r^4 + ... has gcd-splitting kernel
            u64 e = 0, q = F->q();
            while (q > 1) {
                q >>= 1;
                ++e;
            }
            QPoly s = mod(F, r, f), t = s;
            for (u64 i = 1; i < e * k; ++i) {
                t = mulmod(F, t, t, f);
                s = add(F, s, t);
            }
            d = gcd(F, s, f);
        } else {
            mpz_class qk;
            mpz_ui_pow_ui(qk.get_mpz_t(), (unsigned long)F->q(), (unsigned long)k);
            mpz_class e = (qk - 1) / 2;
            QPoly s = powmod(F, r, e, f);
            if (!s.empty()) s[0] = F->sub(s[0], 1);
            trim(s);
            d = gcd(F, s, f);
        }
        if (degree(d) > 0 && degree(d) < degree(f)) {
            equal_degree(F, d, k, rng, out);
            equal_degree(F, div_exact(F, f, d), k, rng, out);
            return;
        }
    }
}

inline void distinct_degree(const GF& F, QPoly f, std::mt19937_64& rng, std::vector<QPoly>& out) {
    make_monic(F, f);
    QPoly x{0, 1};
    QPoly w = mod(F, x, f);
    for (std::size_t k = 1; degree(f) >= int(2 * k); ++k) {
        w = powmod(F, w, mpz_class((unsigned long)F->q()), f);
        QPoly wx = sub(F, w, x);
        QPoly g = gcd(F, wx, f);
        if (degree(g) > 0) {
            equal_degree(F, g, k, rng, out);
            f = div_exact(F, f, g);
            w = mod(F, w, f);
        }
    }
    if (degree(f) > 0) out.push_back(f);
}

} // namespace detail

// Distinct monic irreducible factors of f (multiplicities dropped), sorted.
inline std::vector<QPoly> irreducible_factors(const GF& F, QPoly f, std::mt19937_64& rng) {
    std::vector<QPoly> out;
    make_monic(F, f);
    while (degree(f) > 0) {
        QPoly fp = derivative(F, f);
        if (fp.empty()) {
            f = pth_root(F, f);
            continue;
        }
        QPoly g = gcd(F, f, fp);
        QPoly h = div_exact(F, f, g); // squarefree, holds every factor of f
        if (degree(h) > 0) detail::distinct_degree(F, h, rng, out);
        // remaining multiplicity lives in g, but all its factors divide h
        // already unless they had multiplicity divisible by p
        QPoly rest = g;
        for (const QPoly& irr : out)
            for (;;) {
                auto [q, r] = divmod(F, rest, irr);
                if (!r.empty()) break;
                rest = q;
            }
        f = rest;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Evaluate f at a square matrix (Horner).
inline GFMatrix eval_at(const GF& F, const QPoly& f, const GFMatrix& a) {
    std::size_t n = a.rows();
    GFMatrix r(F, n, n);
    for (std::size_t i = f.size(); i-- > 0;) {
        r = r * a;
        if (f[i])
            for (std::size_t t = 0; t < n; ++t) r(t, t) = F->add(r(t, t), f[i]);
    }
    return r;
}

// Minimal polynomial via Krylov spinning: lcm of the local minimal
// polynomials of the standard basis vectors, with early exit at full degree.
inline QPoly minpoly(const GFMatrix& a) {
    GF F = a.field();
    std::size_t n = a.rows();
    check_internal(n == a.cols(), "minpoly: not square");
    QPoly m{1};
    for (std::size_t seed = 0; seed < n && degree(m) < int(n); ++seed) {
        // fresh echelon with combination tracking in terms of Krylov powers
        std::vector<std::vector<u32>> rows, combos;
        std::vector<std::size_t> pivots;
        std::vector<u32> v(n, 0);
        v[seed] = 1;
        std::size_t step = 0;
        for (;;) {
            std::vector<u32> w = v, c(n + 1, 0);
            c[step] = 1;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                u32 f = w[pivots[r]];
                if (!f) continue;
                for (std::size_t j = 0; j < n; ++j) w[j] = F->sub(w[j], F->mul(f, rows[r][j]));
                for (std::size_t j = 0; j <= step; ++j) c[j] = F->sub(c[j], F->mul(f, combos[r][j]));
            }
            std::size_t piv = 0;
            while (piv < n && w[piv] == 0) ++piv;
            if (piv == n) {
                // relation: local minimal polynomial from the combination
                QPoly loc(c.begin(), c.begin() + step + 1);
                trim(loc);
                make_monic(F, loc);
                m = lcm(F, m, loc);
                break;
            }
            u32 inv = F->inv(w[piv]);
            for (std::size_t j = 0; j < n; ++j) w[j] = F->mul(w[j], inv);
            for (std::size_t j = 0; j <= step; ++j) c[j] = F->mul(c[j], inv);
            rows.push_back(w);
            combos.push_back(c);
            pivots.push_back(piv);
            v = a.apply(v);
            ++step;
        }
    }
    return m;
}

} // namespace monoidrep::gq
