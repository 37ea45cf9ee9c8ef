#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monoidrep/intmat.hpp"

using namespace monoidrep;

namespace {

// Independent oracle: the product d_1...d_k of the first k elementary
// divisors equals the gcd of all k x k minors.  Brute force, fine up to 4x4.
Int determinantal_divisor(const IntMatrix& a, std::size_t k) {
    std::vector<std::size_t> ri(k), ci(k);
    Int g = 0;
    std::vector<std::size_t> rows(a.rows()), cols(a.cols());
    std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t from, std::size_t got) {
        if (got == k) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(ri[i], ci[j]);
            Int d = det(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            return;
        }
        for (std::size_t c = from; c < a.cols(); ++c) {
            ci[got] = c;
            pick_cols(c + 1, got + 1);
        }
    };
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t from, std::size_t got) {
        if (got == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t r = from; r < a.rows(); ++r) {
            ri[got] = r;
            pick_rows(r + 1, got + 1);
        }
    };
    pick_rows(0, 0);
    return g;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

void check_smith_invariants(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    REQUIRE(s.left * a * s.right == s.diagonal_matrix(a.rows(), a.cols()));
    REQUIRE(abs(det(s.left)) == 1);
    REQUIRE(abs(det(s.right)) == 1);
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
        if (s.diag[i + 1] == 0) {
            REQUIRE((i + 1 >= s.rank));
        } else {
            REQUIRE(s.diag[i] != 0);
            REQUIRE(s.diag[i + 1] % s.diag[i] == 0);
        }
    }
}

} // namespace

TEST_CASE("smith normal form on pinned inputs") {
    SECTION("identity") {
        SmithForm s = smith_normal_form(IntMatrix::identity(3));
        REQUIRE(s.diag == std::vector<Int>{1, 1, 1});
    }
    SECTION("symmetric 0/1 matrix with determinant 2") {
        IntMatrix a = IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        SmithForm s = smith_normal_form(a);
        REQUIRE(s.diag == std::vector<Int>{1, 1, 2});
        check_smith_invariants(a);
    }
    SECTION("already diagonal") {
        IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 0}});
        SmithForm s = smith_normal_form(a);
        REQUIRE(s.diag == std::vector<Int>{2, 0});
        REQUIRE(s.rank == 1);
    }
    SECTION("empty matrix") {
        SmithForm s = smith_normal_form(IntMatrix(0, 0));
        REQUIRE(s.diag.empty());
        REQUIRE(s.rank == 0);
    }
    SECTION("deterministic transforms") {
        IntMatrix a = IntMatrix::from_rows({{4, 6, 2}, {2, 8, 10}});
        SmithForm s1 = smith_normal_form(a);
        SmithForm s2 = smith_normal_form(a);
        REQUIRE(s1.left == s2.left);
        REQUIRE(s1.right == s2.right);
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(0xA11CE);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMatrix a = random_matrix(rng, r, c, -9, 9);
        check_smith_invariants(a);
    }
}

TEST_CASE("torsion primes match the determinantal-divisor oracle") {
    SECTION("pinned") {
        REQUIRE(torsion_primes(IntMatrix::identity(4)).empty());
        IntMatrix a = IntMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        REQUIRE(torsion_primes(a) == std::set<unsigned long>{2});
        IntMatrix d = IntMatrix::from_rows({{6, 0}, {0, 0}});
        REQUIRE(torsion_primes(d) == std::set<unsigned long>{2, 3});
    }
    SECTION("random cross-check") {
        std::mt19937 rng(0xBEE);
        for (int iter = 0; iter < 40; ++iter) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            IntMatrix a = random_matrix(rng, r, c, -6, 6);
            SmithForm s = smith_normal_form(a);
            // nonzero elementary divisors from determinantal divisors
            std::set<unsigned long> expect;
            Int prev = 1;
            for (std::size_t k = 1; k <= s.rank; ++k) {
                Int dk = determinantal_divisor(a, k);
                Int ek = dk / prev;
                prev = dk;
                REQUIRE(ek == s.diag[k - 1]);
                detail::factor_into(ek, expect);
            }
            REQUIRE(torsion_primes(a) == expect);
        }
    }
}

TEST_CASE("saturated kernels") {
    SECTION("zero matrix") {
        IntMatrix k = kernel_saturated(IntMatrix(2, 2));
        REQUIRE(k == IntMatrix::identity(2));
    }
    SECTION("single relation") {
        IntMatrix k = kernel_saturated(IntMatrix::from_rows({{1, 1}}));
        REQUIRE(k.rows() == 1);
        REQUIRE(((k(0, 0) == 1 && k(0, 1) == -1) || (k(0, 0) == -1 && k(0, 1) == 1)));
    }
    SECTION("nonsingular matrix has trivial kernel") {
        IntMatrix a = IntMatrix::from_rows({{2, 1}, {1, 1}});
        REQUIRE(det(a) == 1);
        REQUIRE(kernel_saturated(a).rows() == 0);
    }
    SECTION("kernel rows are annihilated and form a primitive lattice") {
        std::mt19937 rng(0xFACade);
        for (int iter = 0; iter < 50; ++iter) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
            IntMatrix a = random_matrix(rng, r, c, -5, 5);
            IntMatrix k = kernel_saturated(a);
            REQUIRE(k.rows() + rank(a) == c);
            if (k.rows() == 0) continue;
            IntMatrix prod = a * k.transpose();
            REQUIRE(prod.is_zero());
            // saturation: all elementary divisors of the basis are 1
            SmithForm s = smith_normal_form(k);
            for (std::size_t i = 0; i < s.rank; ++i) REQUIRE(s.diag[i] == 1);
            REQUIRE(s.rank == k.rows());
        }
    }
}

TEST_CASE("hermite form canonicalizes row lattices") {
    std::mt19937 rng(0x5EED);
    for (int iter = 0; iter < 30; ++iter) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a = random_matrix(rng, r, c, -7, 7);
        IntMatrix h = hnf_rows(a);
        // unimodular row mix leaves the HNF unchanged
        IntMatrix u = IntMatrix::identity(r);
        if (r >= 2) {
            u(0, 1) = 3;
            u(1, 0) = 1;
            u(1, 1) = 4; // det 1
        }
        REQUIRE(hnf_rows(u * a) == h);
    }
}

TEST_CASE("rational solving") {
    auto rat_rows = [](std::vector<std::vector<long>> v) {
        std::vector<std::vector<Rat>> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (long e : v[i]) out[i].push_back(Rat(e));
        return out;
    };
    SECTION("identity") {
        RatSolve s = solve_rational(rat_rows({{1, 0}, {0, 1}}), {Rat(3), Rat(5)});
        REQUIRE(s.status == RatSolve::Status::solved);
        REQUIRE(s.x == std::vector<Rat>{3, 5});
    }
    SECTION("overdetermined consistent") {
        RatSolve s = solve_rational(rat_rows({{1}, {1}}), {Rat(2), Rat(2)});
        REQUIRE(s.status == RatSolve::Status::solved);
        REQUIRE(s.x == std::vector<Rat>{2});
    }
    SECTION("inconsistent") {
        RatSolve s = solve_rational(rat_rows({{1}, {1}}), {Rat(1), Rat(2)});
        REQUIRE(s.status == RatSolve::Status::inconsistent);
    }
    SECTION("underdetermined") {
        RatSolve s = solve_rational(rat_rows({{1, 1}}), {Rat(1)});
        REQUIRE(s.status == RatSolve::Status::underdetermined);
    }
}
