#pragma once
// Integer-level invariants of a finite monoid: sandwich matrices of regular
// J-classes and their cokernel torsion, the radical J of the rational
// monoid algebra cut out by the trace form, powers J^k with the torsion of
// the quotients J^k/J^{k+1}, and the derived prime classification
// (strongly modular / modular / nonmodular).

#include <set>
#include <vector>

#include "monoidrep/intmat.hpp"
#include "monoidrep/monoid.hpp"

namespace monoidrep {

struct SandwichData {
    u32 idem = 0;
    std::vector<u32> l_class, r_class; // ascending element indices
    MaxSubgroup group;
    std::vector<u32> r_orbit_reps; // orbit representatives of G_e \ R_e, ascending
    std::vector<u32> l_orbit_reps; // orbit representatives of L_e / G_e, ascending
    // classical sandwich matrix over G_e u {0}: entry is the monoid element
    // r_i * l_j when it lies in G_e, else -1 standing for 0
    std::vector<std::vector<long>> classical;
    IntMatrix phi; // |R_e| x |L_e| 0/1 linearization over the fixed bases
    std::size_t image_rank = 0;
    std::set<unsigned long> coker_torsion_primes;
};

// Pairing of the L-class and R-class of an idempotent e through the maximal
// subgroup: (r, l) -> r l when r l lands in G_e.  Rows of the linearization
// are indexed by (orbit representative of G_e\R_e, group element), columns
// by the elements of L_e in index order.
inline SandwichData sandwich(const FiniteMonoid& M, const GreenStructure& G, u32 e) {
    check_input(is_idempotent(M, e), "sandwich: not idempotent");
    SandwichData S;
    S.idem = e;
    for (u32 m = 0; m < M.size; ++m) {
        if (G.l_of[m] == G.l_of[e]) S.l_class.push_back(m);
        if (G.r_of[m] == G.r_of[e]) S.r_class.push_back(m);
    }
    S.group = maximal_subgroup(M, G, e);
    std::set<u32> gset(S.group.elements.begin(), S.group.elements.end());

    // orbits of the free G_e-actions
    std::set<u32> seen;
    for (u32 r : S.r_class) {
        if (seen.count(r)) continue;
        u32 rep = r;
        for (u32 g : S.group.elements) {
            u32 y = M.mul(g, r);
            seen.insert(y);
            rep = std::min(rep, y);
        }
        S.r_orbit_reps.push_back(rep);
    }
    std::sort(S.r_orbit_reps.begin(), S.r_orbit_reps.end());
    seen.clear();
    for (u32 l : S.l_class) {
        if (seen.count(l)) continue;
        u32 rep = l;
        for (u32 g : S.group.elements) {
            u32 y = M.mul(l, g);
            seen.insert(y);
            rep = std::min(rep, y);
        }
        S.l_orbit_reps.push_back(rep);
    }
    std::sort(S.l_orbit_reps.begin(), S.l_orbit_reps.end());

    S.classical.assign(S.r_orbit_reps.size(), std::vector<long>(S.l_orbit_reps.size(), -1));
    for (std::size_t i = 0; i < S.r_orbit_reps.size(); ++i)
        for (std::size_t j = 0; j < S.l_orbit_reps.size(); ++j) {
            u32 prod = M.mul(S.r_orbit_reps[i], S.l_orbit_reps[j]);
            if (gset.count(prod)) S.classical[i][j] = long(prod);
        }

    std::size_t gsz = S.group.elements.size();
    std::vector<long> gpos(M.size, -1);
    for (std::size_t t = 0; t < gsz; ++t) gpos[S.group.elements[t]] = long(t);
    S.phi = IntMatrix(S.r_orbit_reps.size() * gsz, S.l_class.size());
    for (std::size_t i = 0; i < S.r_orbit_reps.size(); ++i)
        for (std::size_t j = 0; j < S.l_class.size(); ++j) {
            u32 prod = M.mul(S.r_orbit_reps[i], S.l_class[j]);
            long t = gpos[prod];
            if (t >= 0) S.phi(i * gsz + std::size_t(t), j) = 1;
        }
    SmithForm sf = smith_normal_form(S.phi);
    S.image_rank = sf.rank;
    for (const Int& d : sf.diag)
        if (d > 1) detail::factor_into(d, S.coker_torsion_primes);
    return S;
}

struct IntegralRadical {
    IntMatrix L;                    // trace-form matrix, L_ij = |Fix_L(m_i m_j)|
    IntMatrix jbasis;               // saturated basis of J = ker L  n  Z^M, rows
    std::vector<IntMatrix> powers;  // powers[k] = HNF basis of J^{k+1}; empty matrices trimmed
    std::vector<std::set<unsigned long>> torsion; // torsion[k] = primes of J^{k+1}/J^{k+2}
    std::size_t loewy_q = 1;        // least n with J^n = 0
};

namespace detail {

inline std::vector<Int> convolve(const FiniteMonoid& M, const std::vector<Int>& u,
                                 const std::vector<Int>& v) {
    std::vector<Int> w(M.size, Int(0));
    for (u32 a = 0; a < M.size; ++a) {
        if (u[a] == 0) continue;
        for (u32 b = 0; b < M.size; ++b) {
            if (v[b] == 0) continue;
            w[M.mul(a, b)] += u[a] * v[b];
        }
    }
    return w;
}

} // namespace detail

inline IntegralRadical integral_radical(const FiniteMonoid& M) {
    IntegralRadical R;
    u32 n = M.size;
    std::vector<u32> fix(n, 0);
    for (u32 m = 0; m < n; ++m)
        for (u32 x = 0; x < n; ++x)
            if (M.mul(m, x) == x) ++fix[m];
    R.L = IntMatrix(n, n);
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) R.L(i, j) = fix[M.mul(i, j)];
    R.jbasis = kernel_saturated(R.L);
    if (R.jbasis.rows() == 0) {
        R.loewy_q = 1;
        return R;
    }
    R.powers.push_back(R.jbasis);
    for (;;) {
        const IntMatrix& cur = R.powers.back();
        // J^{k+1} = span of (basis of J) * (basis of J^k)
        std::vector<std::vector<Int>> prods;
        for (std::size_t i = 0; i < R.jbasis.rows(); ++i) {
            std::vector<Int> u = R.jbasis.row(i);
            for (std::size_t j = 0; j < cur.rows(); ++j)
                prods.push_back(detail::convolve(M, u, cur.row(j)));
        }
        IntMatrix stacked(prods.size(), n);
        for (std::size_t i = 0; i < prods.size(); ++i)
            for (u32 j = 0; j < n; ++j) stacked(i, j) = prods[i][j];
        IntMatrix next = hnf_rows(stacked);
        if (next.rows() == 0) break;
        // torsion of J^k / J^{k+1}: elementary divisors of the coordinates
        // of the new basis in the previous one (exact lattices, so the
        // coordinates are integers)
        check_internal(R.powers.size() < M.size + 2u, "integral_radical: power chain too long");
        R.powers.push_back(next);
    }
    R.loewy_q = R.powers.size() + 1;
    for (std::size_t k = 0; k + 1 <= R.powers.size(); ++k) {
        const IntMatrix& big = R.powers[k];
        std::set<unsigned long> primes;
        if (k + 1 < R.powers.size()) {
            const IntMatrix& small = R.powers[k + 1];
            auto coords = rows_in_basis(small, big);
            IntMatrix C(coords.size(), big.rows());
            for (std::size_t i = 0; i < coords.size(); ++i)
                for (std::size_t j = 0; j < big.rows(); ++j) {
                    check_internal(coords[i][j].get_den() == 1,
                                   "integral_radical: power basis coordinates not integral");
                    C(i, j) = coords[i][j].get_num();
                }
            primes = torsion_primes(C);
        }
        // last quotient J^{n-1}/J^n = J^{n-1} is free: no torsion
        R.torsion.push_back(primes);
    }
    return R;
}

struct PrimeReport {
    std::set<unsigned long> group_order_primes;
    std::set<unsigned long> sandwich_torsion_primes;
    // which power k (1-based, torsion of J^k/J^{k+1}) contributed which primes
    std::vector<std::pair<std::size_t, std::set<unsigned long>>> jpower_torsion;
    std::set<unsigned long> strongly_modular;
    std::set<unsigned long> modular;
    std::size_t loewy_length_q = 1;
};

inline PrimeReport prime_report_from(const std::vector<SandwichData>& sandwiches,
                                     const IntegralRadical& radical) {
    PrimeReport P;
    for (const SandwichData& s : sandwiches) {
        detail::factor_into(Int((unsigned long)s.group.elements.size()), P.group_order_primes);
        P.sandwich_torsion_primes.insert(s.coker_torsion_primes.begin(),
                                         s.coker_torsion_primes.end());
    }
    for (std::size_t k = 0; k < radical.torsion.size(); ++k)
        if (!radical.torsion[k].empty()) P.jpower_torsion.emplace_back(k + 1, radical.torsion[k]);
    P.strongly_modular = P.group_order_primes;
    P.strongly_modular.insert(P.sandwich_torsion_primes.begin(), P.sandwich_torsion_primes.end());
    P.modular = P.strongly_modular;
    for (auto& [k, primes] : P.jpower_torsion) P.modular.insert(primes.begin(), primes.end());
    P.loewy_length_q = radical.loewy_q;
    return P;
}

// Everything integer-level about one monoid, bundled.
struct IntegralAnalysis {
    std::vector<SandwichData> sandwiches; // parallel to green.regular_js
    IntegralRadical radical;
    PrimeReport report;
    u64 lcm_periods = 1;
    unsigned long nonmodular_prime = 2; // smallest nonmodular prime = 1 mod lcm_periods
};

// Smallest prime l with l = 1 (mod n) avoiding the modular set; such l
// exists by Dirichlet and keeps every class l-regular while F_l contains
// the needed roots of unity.
inline unsigned long choose_nonmodular_prime(u64 n, const std::set<unsigned long>& modular) {
    for (u64 c = n + 1; c <= 1000000; c += n) {
        if (!is_prime_ulong(c)) continue;
        if (modular.count((unsigned long)c)) continue;
        return (unsigned long)c;
    }
    throw internal_error("choose_nonmodular_prime: search bound exceeded");
}

inline IntegralAnalysis integral_analysis(const FiniteMonoid& M, const GreenStructure& G,
                                          const std::vector<OmegaData>& omega) {
    IntegralAnalysis A;
    for (u32 e : G.regular_reps) A.sandwiches.push_back(sandwich(M, G, e));
    A.radical = integral_radical(M);
    A.report = prime_report_from(A.sandwiches, A.radical);
    A.lcm_periods = lcm_of_periods(omega);
    A.nonmodular_prime = choose_nonmodular_prime(A.lcm_periods, A.report.modular);
    return A;
}

} // namespace monoidrep
