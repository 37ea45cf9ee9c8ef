#pragma once
// Finite monoid structure: construction from tables or generator closures,
// Green's relations via strongly connected components of Cayley digraphs,
// idempotents and maximal subgroups, index/period data, generalized
// conjugacy, stabilizers, minimal ideals and principal series.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monoidrep/errors.hpp"
#include "monoidrep/gfield.hpp"

namespace monoidrep {

struct FiniteMonoid {
    u32 size = 0;
    std::vector<u32> table; // row-major, table[a * size + b] = a * b
    u32 identity = 0;
    std::vector<std::string> labels;

    u32 mul(u32 a, u32 b) const { return table[a * size + b]; }
    std::string label(u32 i) const {
        return i < labels.size() && !labels[i].empty() ? labels[i] : "m" + std::to_string(i);
    }
};

namespace detail {

// full O(n^3) associativity check up to this size, seeded sampling above
constexpr u32 kFullAssocBound = 256;

inline void verify_associativity(const FiniteMonoid& M) {
    u32 n = M.size;
    auto fail = [&](u32 a, u32 b, u32 c) {
        std::ostringstream os;
        os << "not associative: (" << M.label(a) << "*" << M.label(b) << ")*" << M.label(c)
           << " != " << M.label(a) << "*(" << M.label(b) << "*" << M.label(c) << ")";
        throw input_error(os.str());
    };
    if (n <= kFullAssocBound) {
        for (u32 a = 0; a < n; ++a)
            for (u32 b = 0; b < n; ++b) {
                u32 ab = M.mul(a, b);
                for (u32 c = 0; c < n; ++c)
                    if (M.mul(ab, c) != M.mul(a, M.mul(b, c))) fail(a, b, c);
            }
    } else {
        std::mt19937_64 rng(0x4d6f6e6f69644dULL);
        std::uniform_int_distribution<u32> d(0, n - 1);
        for (u64 t = 0; t < u64(10) * n * n; ++t) {
            u32 a = d(rng), b = d(rng), c = d(rng);
            if (M.mul(M.mul(a, b), c) != M.mul(a, M.mul(b, c))) fail(a, b, c);
        }
    }
}

} // namespace detail

inline FiniteMonoid from_table(const std::vector<std::vector<u32>>& rows,
                               std::optional<u32> identity_hint = std::nullopt,
                               std::vector<std::string> labels = {}) {
    FiniteMonoid M;
    M.size = u32(rows.size());
    check_input(M.size > 0, "from_table: empty table");
    M.table.resize(std::size_t(M.size) * M.size);
    for (u32 i = 0; i < M.size; ++i) {
        check_input(rows[i].size() == M.size, "from_table: table is not square");
        for (u32 j = 0; j < M.size; ++j) {
            check_input(rows[i][j] < M.size, "from_table: entry out of range at row " +
                                                 std::to_string(i) + ", col " + std::to_string(j));
            M.table[std::size_t(i) * M.size + j] = rows[i][j];
        }
    }
    M.labels = std::move(labels);
    detail::verify_associativity(M);
    auto is_identity = [&](u32 e) {
        for (u32 m = 0; m < M.size; ++m)
            if (M.mul(e, m) != m || M.mul(m, e) != m) return false;
        return true;
    };
    if (identity_hint) {
        check_input(*identity_hint < M.size && is_identity(*identity_hint),
                    "from_table: hinted element is not an identity");
        M.identity = *identity_hint;
    } else {
        u32 e = 0;
        while (e < M.size && !is_identity(e)) ++e;
        check_input(e < M.size, "from_table: no identity element");
        M.identity = e;
    }
    return M;
}

// Breadth-first closure of a generating set under an associative product.
// Element order: identity, then the generators in the given order, then
// products in discovery order.
template <class T, class MulFn, class LabelFn>
FiniteMonoid closure_from_generators(const T& id, const std::vector<T>& gens, MulFn&& prod,
                                     LabelFn&& label_fn, std::size_t bound = 5000) {
    std::vector<T> elems;
    std::map<T, u32> index;
    auto intern = [&](const T& x) -> u32 {
        auto it = index.find(x);
        if (it != index.end()) return it->second;
        check_input(elems.size() < bound, "closure exceeds bound");
        u32 id_ = u32(elems.size());
        elems.push_back(x);
        index.emplace(x, id_);
        return id_;
    };
    intern(id);
    for (const T& g : gens) intern(g);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            T x = prod(elems[i], gens[gi]);
            intern(x);
        }
    u32 n = u32(elems.size());
    FiniteMonoid M;
    M.size = n;
    M.identity = 0;
    M.table.resize(std::size_t(n) * n);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            T x = prod(elems[a], elems[b]);
            auto it = index.find(x);
            check_internal(it != index.end(), "closure: product escapes closed set");
            M.table[std::size_t(a) * n + b] = it->second;
        }
    M.labels.resize(n);
    for (u32 i = 0; i < n; ++i) M.labels[i] = label_fn(elems[i]);
    return M;
}

// ---------------------------------------------------------------------------
// builders

inline FiniteMonoid trivial_monoid() {
    return from_table({{0}}, 0, {"1"});
}

inline FiniteMonoid cyclic_monoid(u32 m) {
    check_input(m >= 1, "cyclic_monoid: order must be positive");
    std::vector<std::vector<u32>> t(m, std::vector<u32>(m));
    std::vector<std::string> lab(m);
    for (u32 a = 0; a < m; ++a) {
        lab[a] = a == 0 ? "1" : "g^" + std::to_string(a);
        for (u32 b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    }
    return from_table(t, 0, lab);
}

// All self-maps of {0..n-1}; code digits base n give the images, and maps
// compose as functions acting on the left: (fg)(x) = f(g(x)).
inline FiniteMonoid full_transformation_monoid(u32 n, std::size_t bound = 5000) {
    check_input(n >= 1, "full_transformation_monoid: need n >= 1");
    u64 count = 1;
    for (u32 i = 0; i < n; ++i) {
        count *= n;
        check_input(count <= bound, "full_transformation_monoid: size bound exceeded");
    }
    auto image = [&](u64 code, u32 x) {
        for (u32 i = 0; i < x; ++i) code /= n;
        return u32(code % n);
    };
    std::vector<std::vector<u32>> t(count, std::vector<u32>(count));
    std::vector<std::string> lab(count);
    u64 pow_last = 1;
    for (u32 i = 0; i + 1 < n; ++i) pow_last *= n;
    for (u64 a = 0; a < count; ++a) {
        std::ostringstream os;
        os << "[";
        for (u32 x = 0; x < n; ++x) os << image(a, x) + 1 << (x + 1 < n ? " " : "");
        os << "]";
        lab[a] = os.str();
        for (u64 b = 0; b < count; ++b) {
            u64 code = 0, mul = 1;
            for (u32 x = 0; x < n; ++x) {
                code += u64(image(a, image(b, x))) * mul;
                mul *= n;
            }
            t[a][b] = u32(code);
        }
    }
    u64 idc = 0, mul = 1;
    for (u32 x = 0; x < n; ++x) {
        idc += u64(x) * mul;
        mul *= n;
    }
    return from_table(t, u32(idc), lab);
}

// S_n as a monoid: the group of units of T_n, enumerated in lexicographic
// one-line order.
inline FiniteMonoid symmetric_monoid(u32 n) {
    check_input(n >= 1 && n <= 6, "symmetric_monoid: n out of range");
    std::vector<std::vector<u32>> perms;
    std::vector<u32> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    u32 m = u32(perms.size());
    std::map<std::vector<u32>, u32> index;
    for (u32 i = 0; i < m; ++i) index[perms[i]] = i;
    std::vector<std::vector<u32>> t(m, std::vector<u32>(m));
    std::vector<std::string> lab(m);
    for (u32 a = 0; a < m; ++a) {
        std::ostringstream os;
        os << "[";
        for (u32 x = 0; x < n; ++x) os << perms[a][x] + 1 << (x + 1 < n ? " " : "");
        os << "]";
        lab[a] = os.str();
        for (u32 b = 0; b < m; ++b) {
            std::vector<u32> c(n);
            for (u32 x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = index[c];
        }
    }
    return from_table(t, 0, lab);
}

namespace detail {

struct GFMatElem {
    std::vector<u32> e; // row-major codes
    bool operator<(const GFMatElem& o) const { return e < o.e; }
};

inline GFMatElem gfmat_mul(const GF& F, u32 n, const GFMatElem& a, const GFMatElem& b) {
    GFMatElem c;
    c.e.assign(std::size_t(n) * n, 0);
    for (u32 i = 0; i < n; ++i)
        for (u32 k = 0; k < n; ++k) {
            u32 x = a.e[i * n + k];
            if (!x) continue;
            for (u32 j = 0; j < n; ++j) {
                u32 y = b.e[k * n + j];
                if (y) c.e[i * n + j] = F->add(c.e[i * n + j], F->mul(x, y));
            }
        }
    return c;
}

inline std::string gfmat_label(const GF& F, u32 n, const GFMatElem& a) {
    std::ostringstream os;
    os << "[";
    for (u32 i = 0; i < n; ++i) {
        for (u32 j = 0; j < n; ++j) os << a.e[i * n + j] << (j + 1 < n ? " " : "");
        if (i + 1 < n) os << ";";
    }
    os << "]";
    return os.str();
}

inline std::pair<u64, u32> prime_power(u64 q) {
    for (u64 p = 2; p * p <= q; ++p)
        if (q % p == 0) {
            u32 d = 0;
            u64 r = q;
            while (r % p == 0) {
                r /= p;
                ++d;
            }
            check_input(r == 1, "not a prime power");
            return {p, d};
        }
    return {q, 1};
}

} // namespace detail

// The multiplicative monoid of all n x n matrices over F_q, enumerated in
// row-major code order.
inline FiniteMonoid full_matrix_monoid(u32 n, u64 q, std::size_t bound = 5000) {
    check_input(n >= 1, "full_matrix_monoid: need n >= 1");
    auto [p, d] = detail::prime_power(q);
    GF F = GFContext::make(p, d);
    u64 count = 1;
    for (u32 i = 0; i < n * n; ++i) {
        count *= q;
        check_input(count <= bound, "full_matrix_monoid: size bound exceeded");
    }
    std::vector<std::vector<u32>> t(count, std::vector<u32>(count));
    std::vector<std::string> lab(count);
    auto decode = [&](u64 code) {
        detail::GFMatElem m;
        m.e.resize(std::size_t(n) * n);
        for (u32 i = 0; i < n * n; ++i) {
            m.e[i] = u32(code % q);
            code /= q;
        }
        return m;
    };
    auto encode = [&](const detail::GFMatElem& m) {
        u64 code = 0;
        for (u32 i = n * n; i-- > 0;) code = code * q + m.e[i];
        return code;
    };
    for (u64 a = 0; a < count; ++a) {
        detail::GFMatElem ma = decode(a);
        lab[a] = detail::gfmat_label(F, n, ma);
        for (u64 b = 0; b < count; ++b)
            t[a][b] = u32(encode(detail::gfmat_mul(F, n, ma, decode(b))));
    }
    detail::GFMatElem id;
    id.e.assign(std::size_t(n) * n, 0);
    for (u32 i = 0; i < n; ++i) id.e[i * n + i] = 1;
    return from_table(t, u32(encode(id)), lab);
}

// All singular 2x2 matrices over F_2 together with the identity matrix.
inline FiniteMonoid singular_plus_identity() {
    FiniteMonoid full = full_matrix_monoid(2, 2);
    auto det2 = [&](u32 code) {
        u32 a = code & 1, b = (code >> 1) & 1, c = (code >> 2) & 1, d = (code >> 3) & 1;
        return (a * d) ^ (b * c);
    };
    std::vector<u32> keep;
    for (u32 m = 0; m < full.size; ++m)
        if (det2(m) == 0 || m == full.identity) keep.push_back(m);
    std::vector<u32> pos(full.size, 0);
    for (u32 i = 0; i < keep.size(); ++i) pos[keep[i]] = i;
    u32 n = u32(keep.size());
    std::vector<std::vector<u32>> t(n, std::vector<u32>(n));
    std::vector<std::string> lab(n);
    for (u32 i = 0; i < n; ++i) {
        lab[i] = full.labels[keep[i]];
        for (u32 j = 0; j < n; ++j) t[i][j] = pos[full.mul(keep[i], keep[j])];
    }
    return from_table(t, pos[full.identity], lab);
}

// M_p = C_p  u  T with T = {z} u {0..p}^2, where (i,j)(k,l) = (i,l) when
// j != k and z otherwise, z is a zero, and the group acts trivially on T.
inline FiniteMonoid mp_monoid(u32 p) {
    check_input(is_prime_ulong(p), "mp_monoid: parameter must be prime");
    u32 grid = (p + 1) * (p + 1);
    u32 n = p + 1 + grid; // p group elements, z, grid
    u32 z = p;
    auto pair_index = [&](u32 i, u32 j) { return p + 1 + i * (p + 1) + j; };
    std::vector<std::vector<u32>> t(n, std::vector<u32>(n));
    std::vector<std::string> lab(n);
    for (u32 a = 0; a < p; ++a) lab[a] = a == 0 ? "1" : "x^" + std::to_string(a);
    lab[z] = "z";
    for (u32 i = 0; i <= p; ++i)
        for (u32 j = 0; j <= p; ++j)
            lab[pair_index(i, j)] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            u32 r;
            if (a < p && b < p)
                r = (a + b) % p;
            else if (a < p)
                r = b; // group acts trivially on T
            else if (b < p)
                r = a;
            else if (a == z || b == z)
                r = z;
            else {
                u32 ai = (a - p - 1) / (p + 1), aj = (a - p - 1) % (p + 1);
                u32 bi = (b - p - 1) / (p + 1), bj = (b - p - 1) % (p + 1);
                r = (aj != bi) ? pair_index(ai, bj) : z;
            }
            t[a][b] = r;
        }
    return from_table(t, 0, lab);
}

// Submonoid {1, 0, vertices, edges} of the path algebra of the quiver with
// adjacency A - I, truncated at paths of length 2.  A must be nonnegative
// with positive diagonal; entry (i,j) of A - I counts arrows j -> i.
inline FiniteMonoid quiver_monoid(const std::vector<std::vector<long>>& a) {
    std::size_t nv = a.size();
    check_input(nv >= 1, "quiver_monoid: empty matrix");
    for (std::size_t i = 0; i < nv; ++i) {
        check_input(a[i].size() == nv, "quiver_monoid: matrix not square");
        check_input(a[i][i] >= 1, "quiver_monoid: diagonal must be positive");
        for (long v : a[i]) check_input(v >= 0, "quiver_monoid: negative entry");
    }
    struct Arrow {
        u32 from, to;
    };
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            long cnt = a[i][j] - (i == j ? 1 : 0);
            for (long k = 0; k < cnt; ++k) arrows.push_back({u32(j), u32(i)});
        }
    // elements: 1, z, eps_0..eps_{nv-1}, arrows
    u32 n = u32(2 + nv + arrows.size());
    u32 one = 0, z = 1;
    auto eps = [&](u32 v) { return 2 + v; };
    auto arr = [&](u32 k) { return u32(2 + nv + k); };
    std::vector<std::string> lab(n);
    lab[one] = "1";
    lab[z] = "0";
    for (u32 v = 0; v < nv; ++v) lab[eps(v)] = "e" + std::to_string(v + 1);
    for (u32 k = 0; k < arrows.size(); ++k)
        lab[arr(k)] = "a" + std::to_string(k + 1) + ":" + std::to_string(arrows[k].from + 1) +
                      "->" + std::to_string(arrows[k].to + 1);
    std::vector<std::vector<u32>> t(n, std::vector<u32>(n, z));
    for (u32 x = 0; x < n; ++x) {
        t[one][x] = x;
        t[x][one] = x;
        t[z][x] = z;
        t[x][z] = z;
    }
    for (u32 v = 0; v < nv; ++v)
        for (u32 w = 0; w < nv; ++w) t[eps(v)][eps(w)] = v == w ? eps(v) : z;
    for (u32 k = 0; k < arrows.size(); ++k)
        for (u32 v = 0; v < nv; ++v) {
            t[eps(v)][arr(k)] = arrows[k].to == v ? arr(k) : z;
            t[arr(k)][eps(v)] = arrows[k].from == v ? arr(k) : z;
        }
    // products of two arrows vanish (paths of length 2 are truncated)
    return from_table(t, one, lab);
}

// ---------------------------------------------------------------------------
// Green's relations

namespace detail {

// Iterative Tarjan SCC over an implicit graph given by neighbor(u, k) for
// k < deg; components are renumbered by their smallest member so the result
// does not depend on traversal order.
template <class NeighborFn>
std::vector<u32> scc(u32 n, u32 deg, NeighborFn&& neighbor) {
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<u32> stack, raw(n, 0);
    int next_index = 0;
    u32 n_comp = 0;
    struct Frame {
        u32 v, edge;
    };
    std::vector<Frame> call;
    for (u32 root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < deg) {
                u32 w = neighbor(f.v, f.edge++);
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                u32 v = f.v;
                call.pop_back();
                if (low[v] == index[v]) {
                    for (;;) {
                        u32 w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        raw[w] = n_comp;
                        if (w == v) break;
                    }
                    ++n_comp;
                }
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    // renumber by smallest member
    std::vector<u32> first(n_comp, n);
    for (u32 v = 0; v < n; ++v) first[raw[v]] = std::min(first[raw[v]], v);
    std::vector<u32> order(n_comp);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](u32 a, u32 b) { return first[a] < first[b]; });
    std::vector<u32> remap(n_comp);
    for (u32 i = 0; i < n_comp; ++i) remap[order[i]] = i;
    std::vector<u32> comp(n);
    for (u32 v = 0; v < n; ++v) comp[v] = remap[raw[v]];
    return comp;
}

} // namespace detail

inline bool is_idempotent(const FiniteMonoid& M, u32 e) { return M.mul(e, e) == e; }

inline std::vector<u32> idempotents(const FiniteMonoid& M) {
    std::vector<u32> out;
    for (u32 e = 0; e < M.size; ++e)
        if (is_idempotent(M, e)) out.push_back(e);
    return out;
}

inline bool is_regular_element(const FiniteMonoid& M, u32 m) {
    for (u32 x = 0; x < M.size; ++x)
        if (M.mul(M.mul(m, x), m) == m) return true;
    return false;
}

inline bool is_regular_monoid(const FiniteMonoid& M) {
    for (u32 m = 0; m < M.size; ++m)
        if (!is_regular_element(M, m)) return false;
    return true;
}

struct GreenStructure {
    std::vector<u32> l_of, r_of, j_of;
    u32 n_l = 0, n_r = 0, n_j = 0;
    std::vector<std::vector<u32>> j_members; // ascending element indices
    std::vector<char> j_regular;
    std::vector<long> j_idem;                // smallest idempotent in class, -1 if none
    std::vector<std::vector<char>> j_leq;    // j_leq[a][b] <=> J_a <= J_b (a in MbM)
    std::vector<u32> regular_js;             // regular class ids, ascending
    std::vector<u32> regular_reps;           // chosen idempotents, parallel to regular_js
};

inline GreenStructure green(const FiniteMonoid& M) {
    u32 n = M.size;
    GreenStructure G;
    // L: x ~ y iff Mx = My; mutual reachability under left multiplication
    G.l_of = detail::scc(n, n, [&](u32 u, u32 k) { return M.mul(k, u); });
    G.r_of = detail::scc(n, n, [&](u32 u, u32 k) { return M.mul(u, k); });
    G.j_of = detail::scc(n, 2 * n, [&](u32 u, u32 k) {
        return k < n ? M.mul(k, u) : M.mul(u, k - n);
    });
    G.n_l = *std::max_element(G.l_of.begin(), G.l_of.end()) + 1;
    G.n_r = *std::max_element(G.r_of.begin(), G.r_of.end()) + 1;
    G.n_j = *std::max_element(G.j_of.begin(), G.j_of.end()) + 1;
    G.j_members.assign(G.n_j, {});
    for (u32 v = 0; v < n; ++v) G.j_members[G.j_of[v]].push_back(v);
    G.j_idem.assign(G.n_j, -1);
    for (u32 e = 0; e < n; ++e)
        if (is_idempotent(M, e) && G.j_idem[G.j_of[e]] == -1) G.j_idem[G.j_of[e]] = long(e);
    G.j_regular.assign(G.n_j, 0);
    for (u32 c = 0; c < G.n_j; ++c) G.j_regular[c] = G.j_idem[c] != -1;
    // order: BFS downward from each class over the element digraph; a class
    // a satisfies J_a <= J_b exactly when a member of a lies in M b M
    G.j_leq.assign(G.n_j, std::vector<char>(G.n_j, 0));
    for (u32 b = 0; b < G.n_j; ++b) {
        std::vector<char> below(G.n_j, 0);
        std::vector<u32> queue{G.j_members[b][0]};
        std::vector<char> seen(n, 0);
        seen[queue[0]] = 1;
        below[b] = 1;
        while (!queue.empty()) {
            u32 x = queue.back();
            queue.pop_back();
            for (u32 s = 0; s < n; ++s)
                for (u32 y : {M.mul(s, x), M.mul(x, s)})
                    if (!seen[y]) {
                        seen[y] = 1;
                        below[G.j_of[y]] = 1;
                        queue.push_back(y);
                    }
        }
        for (u32 a = 0; a < G.n_j; ++a)
            if (below[a]) G.j_leq[a][b] = 1;
    }
    for (u32 c = 0; c < G.n_j; ++c)
        if (G.j_regular[c]) {
            G.regular_js.push_back(c);
            G.regular_reps.push_back(u32(G.j_idem[c]));
        }
    return G;
}

// ---------------------------------------------------------------------------
// maximal subgroups and cyclic structure

// Reindexed copy of a multiplicatively closed subset containing an identity.
struct Submonoid {
    std::vector<u32> elements; // ascending parent indices
    FiniteMonoid monoid;
};

inline Submonoid submonoid(const FiniteMonoid& M, std::vector<u32> elems,
                           std::optional<u32> identity = std::nullopt) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::vector<long> pos(M.size, -1);
    for (u32 i = 0; i < elems.size(); ++i) pos[elems[i]] = long(i);
    u32 n = u32(elems.size());
    Submonoid S;
    S.elements = elems;
    S.monoid.size = n;
    S.monoid.table.resize(std::size_t(n) * n);
    S.monoid.labels.resize(n);
    for (u32 i = 0; i < n; ++i) {
        S.monoid.labels[i] = M.label(elems[i]);
        for (u32 j = 0; j < n; ++j) {
            u32 prod = M.mul(elems[i], elems[j]);
            check_internal(pos[prod] != -1, "submonoid: subset not closed");
            S.monoid.table[std::size_t(i) * n + j] = u32(pos[prod]);
        }
    }
    u32 e = 0;
    if (identity) {
        check_internal(pos[*identity] != -1, "submonoid: identity not in subset");
        e = u32(pos[*identity]);
    } else {
        while (e < n) {
            bool ok = true;
            for (u32 m = 0; m < n && ok; ++m)
                ok = S.monoid.table[std::size_t(e) * n + m] == m &&
                     S.monoid.table[std::size_t(m) * n + e] == m;
            if (ok) break;
            ++e;
        }
        check_internal(e < n, "submonoid: no identity in subset");
    }
    S.monoid.identity = e;
    return S;
}

struct MaxSubgroup {
    u32 idem = 0;
    std::vector<u32> elements; // ascending parent indices; the H-class of idem
    FiniteMonoid group;
    std::vector<u32> orders;   // element orders in the group
};

inline MaxSubgroup maximal_subgroup(const FiniteMonoid& M, const GreenStructure& G, u32 e) {
    check_input(is_idempotent(M, e), "maximal_subgroup: not idempotent");
    std::vector<u32> h;
    for (u32 m = 0; m < M.size; ++m)
        if (G.l_of[m] == G.l_of[e] && G.r_of[m] == G.r_of[e]) h.push_back(m);
    MaxSubgroup S;
    S.idem = e;
    Submonoid sub = submonoid(M, h, e);
    S.elements = sub.elements;
    S.group = sub.monoid;
    u32 n = S.group.size;
    S.orders.resize(n);
    for (u32 g = 0; g < n; ++g) {
        u32 x = g, ord = 1;
        while (x != S.group.identity) {
            x = S.group.mul(x, g);
            ++ord;
            check_internal(ord <= n, "maximal_subgroup: H-class is not a group");
        }
        S.orders[g] = ord;
    }
    return S;
}

inline u64 group_order_of_jclass(const FiniteMonoid& M, const GreenStructure& G, u32 jclass) {
    check_internal(G.j_regular[jclass], "group_order_of_jclass: class not regular");
    return maximal_subgroup(M, G, u32(G.j_idem[jclass])).elements.size();
}

struct OmegaData {
    u32 index = 0;  // least i >= 0 with m^i = m^{i+k}
    u32 period = 1; // least such k >= 1
    u32 omega = 0;  // the idempotent power of m
    u32 omega1 = 0; // omega * m, the group part
};

inline OmegaData omega_data(const FiniteMonoid& M, u32 m) {
    // walk 1, m, m^2, ... until the first repetition
    std::vector<long> seen(M.size, -1);
    u32 x = M.identity, step = 0;
    OmegaData d;
    for (;;) {
        if (seen[x] != -1) {
            d.index = u32(seen[x]);
            d.period = step - u32(seen[x]);
            break;
        }
        seen[x] = long(step);
        x = M.mul(x, m);
        ++step;
    }
    // omega = m^r with r >= max(index, 1), r = 0 mod period
    u32 r = d.period;
    while (r < d.index) r += d.period;
    if (r == 0) r = d.period;
    u32 w = M.identity;
    for (u32 i = 0; i < r; ++i) w = M.mul(w, m); // r <= index + period <= |M|+1, cheap
    d.omega = w;
    d.omega1 = M.mul(w, m);
    return d;
}

inline std::vector<OmegaData> omega_table(const FiniteMonoid& M) {
    std::vector<OmegaData> t(M.size);
    for (u32 m = 0; m < M.size; ++m) t[m] = omega_data(M, m);
    return t;
}

inline u64 lcm_of_periods(const std::vector<OmegaData>& omega) {
    u64 l = 1;
    for (const OmegaData& d : omega) l = std::lcm(l, u64(d.period));
    return l;
}

// x^k inside the cyclic group generated by x = m^{omega+1}; k = 0 gives the
// local identity m^omega.
inline u32 p_prime_part(const FiniteMonoid& M, u32 m, u64 p) {
    OmegaData d = omega_data(M, m);
    u64 k = d.period;
    u64 pa = 1;
    while (k % p == 0) {
        k /= p;
        pa *= p;
    }
    // c = 0 mod pa, c = 1 mod k
    u64 c = 0;
    if (k > 1) {
        u64 inv = 1, base = pa % k;
        // pa^{-1} mod k by brute force; k is tiny
        for (u64 t = 1; t < k; ++t)
            if (base * t % k == 1) {
                inv = t;
                break;
            }
        c = pa * inv;
    }
    u32 r = d.omega;
    u32 g = d.omega1;
    for (u64 i = 0; i < c; ++i) r = M.mul(r, g);
    return r;
}

// ---------------------------------------------------------------------------
// generalized conjugacy

struct ClassPartition {
    std::vector<u32> class_of;
    std::vector<std::vector<u32>> members; // ascending
    std::vector<u32> reps;                 // smallest member per class
    std::vector<u32> periods;              // period of the representative

    std::vector<u32> p_regular_classes(u64 p) const {
        std::vector<u32> out;
        for (u32 c = 0; c < reps.size(); ++c)
            if (periods[c] % p != 0) out.push_back(c);
        return out;
    }
};

namespace detail {

struct UnionFind {
    std::vector<u32> parent;
    explicit UnionFind(u32 n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    u32 find(u32 x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(u32 a, u32 b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

// Least equivalence with m m' ~ m' m and m ~ m^{omega+1}.
inline ClassPartition generalized_classes(const FiniteMonoid& M,
                                          const std::vector<OmegaData>& omega) {
    u32 n = M.size;
    detail::UnionFind uf(n);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) uf.unite(M.mul(a, b), M.mul(b, a));
    for (u32 m = 0; m < n; ++m) uf.unite(m, omega[m].omega1);
    ClassPartition P;
    P.class_of.assign(n, 0);
    std::map<u32, u32> root_to_class;
    for (u32 m = 0; m < n; ++m) {
        u32 r = uf.find(m);
        auto it = root_to_class.find(r);
        if (it == root_to_class.end()) {
            it = root_to_class.emplace(r, u32(P.members.size())).first;
            P.members.push_back({});
        }
        P.class_of[m] = it->second;
        P.members[it->second].push_back(m);
    }
    for (const std::vector<u32>& c : P.members) {
        P.reps.push_back(c.front());
        P.periods.push_back(omega[c.front()].period);
    }
    return P;
}

// ---------------------------------------------------------------------------
// stabilizers, ideals, series

inline std::vector<u32> left_stabilizer(const FiniteMonoid& M, u32 a) {
    std::vector<u32> s;
    for (u32 m = 0; m < M.size; ++m)
        if (M.mul(m, a) == a) s.push_back(m);
    return s;
}

inline std::vector<u32> right_stabilizer(const FiniteMonoid& M, u32 a) {
    std::vector<u32> s;
    for (u32 m = 0; m < M.size; ++m)
        if (M.mul(a, m) == a) s.push_back(m);
    return s;
}

inline bool is_aperiodic_subset(const FiniteMonoid& M, const std::vector<u32>& subset) {
    for (u32 m : subset)
        if (omega_data(M, m).period != 1) return false;
    return true;
}

inline bool is_p_prime_subset(const FiniteMonoid& M, const std::vector<u32>& subset, u64 p) {
    for (u32 m : subset)
        if (omega_data(M, m).period % p == 0) return false;
    return true;
}

// The unique minimal nonempty two-sided ideal; it is a single regular
// J-class (the kernel of the monoid).
inline std::vector<u32> minimal_ideal(const FiniteMonoid& M, const GreenStructure& G) {
    long min_class = -1;
    for (u32 c = 0; c < G.n_j; ++c) {
        bool minimal = true;
        for (u32 a = 0; a < G.n_j && minimal; ++a)
            if (a != c && G.j_leq[a][c]) minimal = false;
        if (minimal) {
            check_internal(min_class == -1, "minimal_ideal: kernel is not unique");
            min_class = long(c);
        }
    }
    check_internal(min_class != -1, "minimal_ideal: no minimal class");
    return G.j_members[std::size_t(min_class)];
}

// Unrefinable chain of ideals; each step adjoins a J-class that is minimal
// among the remaining ones (lowest class id on ties).
inline std::vector<std::vector<u32>> principal_series(const FiniteMonoid& M,
                                                      const GreenStructure& G) {
    std::vector<char> added(G.n_j, 0);
    std::vector<std::vector<u32>> series;
    std::vector<u32> current;
    for (u32 step = 0; step < G.n_j; ++step) {
        long pick = -1;
        for (u32 c = 0; c < G.n_j && pick == -1; ++c) {
            if (added[c]) continue;
            bool ready = true;
            for (u32 a = 0; a < G.n_j && ready; ++a)
                if (a != c && !added[a] && G.j_leq[a][c]) ready = false;
            if (ready) pick = long(c);
        }
        check_internal(pick != -1, "principal_series: order has a cycle");
        added[std::size_t(pick)] = 1;
        for (u32 m : G.j_members[std::size_t(pick)]) current.push_back(m);
        std::sort(current.begin(), current.end());
        series.push_back(current);
    }
    return series;
}

// conjugacy classes of a group presented as a monoid of units
inline std::vector<std::vector<u32>> group_conjugacy_classes(const FiniteMonoid& grp) {
    u32 n = grp.size;
    std::vector<u32> inv(n);
    for (u32 g = 0; g < n; ++g) {
        bool found = false;
        for (u32 h = 0; h < n; ++h)
            if (grp.mul(g, h) == grp.identity && grp.mul(h, g) == grp.identity) {
                inv[g] = h;
                found = true;
                break;
            }
        check_input(found, "group_conjugacy_classes: input is not a group");
    }
    detail::UnionFind uf(n);
    for (u32 g = 0; g < n; ++g)
        for (u32 x = 0; x < n; ++x) uf.unite(g, grp.mul(grp.mul(x, g), inv[x]));
    std::map<u32, std::vector<u32>> by_root;
    for (u32 g = 0; g < n; ++g) by_root[uf.find(g)].push_back(g);
    std::vector<std::vector<u32>> out;
    for (auto& [root, members] : by_root) out.push_back(members);
    return out;
}

// relabel the monoid along a permutation; used for isomorphism-invariance
// checks
inline FiniteMonoid relabel(const FiniteMonoid& M, const std::vector<u32>& perm) {
    u32 n = M.size;
    std::vector<u32> inv(n);
    for (u32 i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<std::vector<u32>> t(n, std::vector<u32>(n));
    std::vector<std::string> lab(n);
    for (u32 a = 0; a < n; ++a) {
        lab[perm[a]] = M.label(a);
        for (u32 b = 0; b < n; ++b) t[perm[a]][perm[b]] = perm[M.mul(a, b)];
    }
    return from_table(t, perm[M.identity], lab);
}

} // namespace monoidrep
