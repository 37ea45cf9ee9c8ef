#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monoidrep/gfield.hpp"
#include "monoidrep/gfpoly.hpp"

using namespace monoidrep;

TEST_CASE("field construction is deterministic and validated") {
    SECTION("F_2") {
        GF F = GFContext::make(2, 1);
        REQUIRE(F->q() == 2);
        REQUIRE(F->generator() == 1);
    }
    SECTION("F_4 has the unique irreducible quadratic modulus") {
        GF F = GFContext::make(2, 2);
        REQUIRE(F->modulus() == std::vector<u64>{1, 1, 1}); // x^2 + x + 1
        REQUIRE(F->q() == 4);
    }
    SECTION("F_3 generator is 2") {
        GF F = GFContext::make(3, 1);
        REQUIRE(F->generator() == 2);
    }
    SECTION("rejects composite characteristic and oversized fields") {
        REQUIRE_THROWS_AS(GFContext::make(6, 1), input_error);
        REQUIRE_THROWS_AS(GFContext::make(2, 25), input_error);
    }
}

TEST_CASE("field axioms on random elements") {
    for (auto [p, d] : std::vector<std::pair<u64, u32>>{{2, 1}, {2, 3}, {3, 2}, {5, 1}, {7, 2}}) {
        GF F = GFContext::make(p, d);
        std::mt19937 rng(0xF1E1D + u32(p) * 64 + d);
        std::uniform_int_distribution<u64> pick(0, F->q() - 1);
        for (int t = 0; t < 200; ++t) {
            u32 a = u32(pick(rng)), b = u32(pick(rng)), c = u32(pick(rng));
            REQUIRE(F->add(a, b) == F->add(b, a));
            REQUIRE(F->mul(a, b) == F->mul(b, a));
            REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
            REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            REQUIRE(F->add(a, F->neg(a)) == 0);
            if (a) REQUIRE(F->mul(a, F->inv(a)) == 1);
        }
    }
}

TEST_CASE("generator order and discrete logs, exhaustive on small fields") {
    for (auto [p, d] : std::vector<std::pair<u64, u32>>{{2, 1}, {2, 4}, {3, 2}, {5, 2}, {31, 1}}) {
        GF F = GFContext::make(p, d);
        u64 q = F->q();
        // generator has full order
        u32 x = 1;
        for (u64 k = 1; k < q - 1; ++k) {
            x = F->mul(x, F->generator());
            REQUIRE(x != 1);
        }
        REQUIRE(F->mul(x, F->generator()) == 1);
        // discrete_log inverts exponentiation on every unit
        for (u32 u = 1; u < q; ++u) {
            u64 k = F->discrete_log_unit(u);
            REQUIRE(F->pow(F->generator(), (long long)k) == u);
        }
        REQUIRE_THROWS_AS(F->discrete_log_unit(0), input_error);
    }
    SECTION("pinned: 3^2 = 2 in F_7") {
        GF F = GFContext::make(7, 1);
        REQUIRE(F->generator() == 3);
        REQUIRE(F->discrete_log_unit(2) == 2);
    }
}

TEST_CASE("rank, kernel, solve") {
    GF F2 = GFContext::make(2, 1);
    SECTION("identity rank") { REQUIRE(rank(GFMatrix::identity(F2, 4)) == 4); }
    SECTION("kernel of a single parity relation") {
        GFMatrix m(F2, 1, 2);
        m(0, 0) = 1;
        m(0, 1) = 1;
        GFMatrix k = kernel(m);
        REQUIRE(k.rows() == 1);
        REQUIRE(k(0, 0) == 1);
        REQUIRE(k(0, 1) == 1);
    }
    SECTION("all-ones over F_3 has rank 1") {
        GF F3 = GFContext::make(3, 1);
        GFMatrix m(F3, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = 1;
        REQUIRE(rank(m) == 1);
    }
    SECTION("solve consistent and inconsistent systems") {
        GF F5 = GFContext::make(5, 1);
        GFMatrix m(F5, 2, 2);
        m(0, 0) = 2;
        m(1, 1) = 3;
        auto x = solve(m, {4, 1});
        REQUIRE(x);
        REQUIRE(m.apply(*x) == std::vector<u32>{4, 1});
        GFMatrix s(F5, 2, 1);
        s(0, 0) = 1;
        s(1, 0) = 1;
        REQUIRE_FALSE(solve(s, {1, 2}).has_value());
    }
}

TEST_CASE("generalized eigenspace multiplicities") {
    SECTION("identity") {
        GF F2 = GFContext::make(2, 1);
        REQUIRE(eigen_multiplicity(GFMatrix::identity(F2, 3), 1) == 3);
    }
    SECTION("nonzero nilpotent") {
        GF F2 = GFContext::make(2, 1);
        GFMatrix n(F2, 2, 2);
        n(0, 1) = 1;
        REQUIRE(eigen_multiplicity(n, 0) == 2);
    }
    SECTION("3-cycle over F_4 splits into three simple eigenvalues") {
        GF F4 = GFContext::make(2, 2);
        GFMatrix c(F4, 3, 3);
        c(0, 2) = 1;
        c(1, 0) = 1;
        c(2, 1) = 1;
        u32 omega = F4->generator(); // order 3
        REQUIRE(eigen_multiplicity(c, 1) == 1);
        REQUIRE(eigen_multiplicity(c, omega) == 1);
        REQUIRE(eigen_multiplicity(c, F4->mul(omega, omega)) == 1);
        REQUIRE(eigen_multiplicity(c, 0) == 0);
    }
    SECTION("multiplicities sum to the dimension for permutation and companion matrices") {
        GF F7 = GFContext::make(7, 1);
        // permutation (1 2 3)(4 5 6): x^3-1 splits over F_7
        GFMatrix m(F7, 6, 6);
        u32 perm[6] = {1, 2, 0, 4, 5, 3};
        for (u32 i = 0; i < 6; ++i) m(perm[i], i) = 1;
        std::size_t total = 0;
        for (u64 lam = 0; lam < 7; ++lam) total += eigen_multiplicity(m, u32(lam));
        REQUIRE(total == 6);
        // companion matrix of (x-1)(x-2)(x-3)
        GF F5 = GFContext::make(5, 1);
        GFMatrix c(F5, 3, 3);
        c(1, 0) = 1;
        c(2, 1) = 1;
        // x^3 = 6x^2 - 11x + 6 -> coefficients mod 5
        c(0, 2) = F5->from_int(6);
        c(1, 2) = F5->from_int(-11);
        c(2, 2) = F5->from_int(6);
        std::size_t tot = 0;
        for (u64 lam = 0; lam < 5; ++lam) tot += eigen_multiplicity(c, u32(lam));
        REQUIRE(tot == 3);
    }
    SECTION("dimension mismatch is rejected") {
        GF F2 = GFContext::make(2, 1);
        GFMatrix bad(F2, 2, 3);
        REQUIRE_THROWS_AS(eigen_multiplicity(bad, 0), input_error);
    }
}

TEST_CASE("polynomial factorization over F_q") {
    std::mt19937_64 rng(0xFAC70);
    SECTION("splits x^3 - 1 over F_4 into linear factors") {
        GF F4 = GFContext::make(2, 2);
        gq::QPoly f{1, 0, 0, 1}; // x^3 + 1 = x^3 - 1 in char 2
        auto factors = gq::irreducible_factors(F4, f, rng);
        REQUIRE(factors.size() == 3);
        for (const auto& g : factors) REQUIRE(gq::degree(g) == 1);
    }
    SECTION("x^2 + x + 1 is irreducible over F_2 but splits over F_4") {
        GF F2 = GFContext::make(2, 1);
        gq::QPoly f{1, 1, 1};
        auto factors = gq::irreducible_factors(F2, f, rng);
        REQUIRE(factors.size() == 1);
        REQUIRE(gq::degree(factors[0]) == 2);
        GF F4 = GFContext::make(2, 2);
        auto over4 = gq::irreducible_factors(F4, f, rng);
        REQUIRE(over4.size() == 2);
    }
    SECTION("repeated and char-divisible multiplicities") {
        GF F3 = GFContext::make(3, 1);
        // (x-1)^3 (x-2): derivative of (x-1)^3 part vanishes
        gq::QPoly xm1{F3->neg(1), 1}, xm2{F3->neg(2), 1};
        gq::QPoly f = gq::mul(F3, gq::mul(F3, xm1, xm1), gq::mul(F3, xm1, xm2));
        auto factors = gq::irreducible_factors(F3, f, rng);
        REQUIRE(factors.size() == 2);
        REQUIRE(std::find(factors.begin(), factors.end(), xm1) != factors.end());
        REQUIRE(std::find(factors.begin(), factors.end(), xm2) != factors.end());
    }
    SECTION("random products recover their factors") {
        for (auto [p, d] : std::vector<std::pair<u64, u32>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
            GF F = GFContext::make(p, d);
            std::uniform_int_distribution<u64> pick(0, F->q() - 1);
            for (int t = 0; t < 10; ++t) {
                // product of a few random monic polynomials
                gq::QPoly f{1};
                std::set<gq::QPoly> parts;
                for (int s = 0; s < 3; ++s) {
                    gq::QPoly g(1 + rng() % 3 + 1, 0);
                    for (u32& c : g) c = u32(pick(rng));
                    g.back() = 1;
                    f = gq::mul(F, f, g);
                }
                auto factors = gq::irreducible_factors(F, f, rng);
                gq::QPoly prod{1};
                for (const auto& g : factors) {
                    // every reported factor is irreducible and divides f
                    REQUIRE(gq::divmod(F, f, g).second.empty());
                    prod = gq::mul(F, prod, g);
                }
                // f divides a power of the product of its distinct factors
                gq::QPoly pw = prod;
                for (int i = 0; i < 8; ++i) pw = gq::mul(F, pw, prod);
                REQUIRE(gq::divmod(F, pw, f).second.empty());
            }
        }
    }
}

TEST_CASE("matrix minimal polynomials") {
    GF F2 = GFContext::make(2, 1);
    SECTION("identity has minpoly x - 1") {
        gq::QPoly m = gq::minpoly(GFMatrix::identity(F2, 4));
        REQUIRE(m == gq::QPoly{1, 1}); // x + 1 over F_2
    }
    SECTION("nilpotent Jordan block") {
        GFMatrix n(F2, 3, 3);
        n(0, 1) = 1;
        n(1, 2) = 1;
        gq::QPoly m = gq::minpoly(n);
        REQUIRE(m == gq::QPoly{0, 0, 0, 1}); // x^3
    }
    SECTION("minpoly annihilates and has minimal degree on companion matrices") {
        GF F5 = GFContext::make(5, 1);
        std::mt19937_64 rng(0x1234);
        std::uniform_int_distribution<u64> pick(0, 4);
        for (int t = 0; t < 20; ++t) {
            std::size_t n = 2 + rng() % 4;
            GFMatrix c(F5, n, n);
            for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
            gq::QPoly f(n + 1, 0);
            f[n] = 1;
            for (std::size_t i = 0; i < n; ++i) {
                f[i] = u32(pick(rng));
                c(i, n - 1) = F5->neg(f[i]);
            }
            gq::QPoly m = gq::minpoly(c);
            REQUIRE(m == f); // companion matrix has minpoly = charpoly
            REQUIRE(gq::eval_at(F5, m, c).is_zero());
        }
    }
}
