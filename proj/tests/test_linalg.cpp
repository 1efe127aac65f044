#include <doctest.h>

#include <random>

#include "qcalc/linalg.hpp"

using namespace qcalc;

namespace {

IntMat from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    IntMat m(rows.size(), rows.begin()->size());
    size_t i = 0;
    for (auto& r : rows) {
        size_t j = 0;
        for (int v : r) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

IntMat random_mat(std::mt19937_64& rng, size_t r, size_t c) {
    std::uniform_int_distribution<int> d(-5, 5);
    IntMat m(r, c);
    for (auto& x : m.a) x = d(rng);
    return m;
}

}  // namespace

TEST_CASE("matrix plumbing") {
    IntMat A = from_rows({{1, 2}, {3, 4}});
    IntMat I = IntMat::identity(2);
    CHECK(mat_mul(A, I) == A);
    CHECK(mat_mul(I, A) == A);
    CHECK(transpose(transpose(A)) == A);
    CHECK(mat_vec(A, {Int(1), Int(1)}) == std::vector<Int>{Int(3), Int(7)});
    IntMat H = hstack(A, I);
    CHECK(H.cols == 4);
    CHECK(H.at(1, 2) == 0);
    CHECK(det(A) == -2);
    CHECK(det(from_rows({{2, 0, 1}, {1, 1, 0}, {0, 3, 1}})) == 5);
}

TEST_CASE("smith normal form: transforms, chain, and minor-gcd cross-check") {
    SUBCASE("pinned") {
        // diag(4, 6) has invariant factors (2, 12): gcd 2, 2x2-minor 24
        SmithForm s = smith(from_rows({{4, 0}, {0, 6}}));
        REQUIRE(s.invariants.size() == 2);
        CHECK(s.invariants[0] == 2);
        CHECK(s.invariants[1] == 12);
    }

    SUBCASE("properties on random matrices") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 60; ++trial) {
            size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
            IntMat A = random_mat(rng, r, c);
            SmithForm s = smith(A);
            CHECK(mat_mul(mat_mul(s.U, A), s.V) == s.D);
            Int du = det(s.U), dv = det(s.V);
            CHECK((du == 1 || du == -1));
            CHECK((dv == 1 || dv == -1));
            for (size_t i = 0; i + 1 < s.invariants.size(); ++i)
                CHECK(divides(s.invariants[i], s.invariants[i + 1]));
            for (const Int& d : s.invariants) CHECK(d > 0);
            CHECK(s.rank == rank_rational(A));
            // independent route: gcds of k x k minors
            CHECK(s.invariants == invariant_factors_minors(A));
        }
    }
}

TEST_CASE("kernel bases are primitive and annihilate") {
    IntMat A = from_rows({{1, 2, 3}});
    IntMat K = kernel_basis(A);
    REQUIRE(K.cols == 2);
    IntMat AK = mat_mul(A, K);
    for (const Int& v : AK.a) CHECK(v == 0);
    CHECK(rank_rational(K) == 2);
    // direct summand: the basis extends to a basis of Z^3
    for (const Int& d : smith(K).invariants) CHECK(d == 1);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat B = random_mat(rng, 2 + trial % 3, 4);
        IntMat KB = kernel_basis(B);
        IntMat Z = mat_mul(B, KB);
        for (const Int& v : Z.a) CHECK(v == 0);
        if (KB.cols > 0)
            for (const Int& d : smith(KB).invariants) CHECK(d == 1);
        CHECK(KB.cols == 4 - rank_rational(B));
    }
}

TEST_CASE("integral and rational solving") {
    IntMat A = from_rows({{2, 0}, {0, 3}});
    std::vector<Int> x;
    REQUIRE(solve_integral(A, {Int(4), Int(6)}, x));
    CHECK(x == std::vector<Int>{Int(2), Int(2)});
    CHECK(!solve_integral(A, {Int(1), Int(0)}, x));
    std::vector<Rat> xr;
    REQUIRE(solve_rational(A, {Int(1), Int(0)}, xr));
    CHECK(xr[0] == Rat(1, 2));
    CHECK(xr[1] == 0);
    // inconsistent system stays inconsistent over Q
    IntMat B = from_rows({{1, 1}, {1, 1}});
    CHECK(!solve_rational(B, {Int(0), Int(1)}, xr));

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        IntMat M = random_mat(rng, 3, 3 + trial % 2);
        // build an exactly solvable right-hand side
        std::vector<Int> x0;
        for (size_t j = 0; j < M.cols; ++j) x0.emplace_back(static_cast<long>(trial) - 2 * static_cast<long>(j));
        std::vector<Int> b = mat_vec(M, x0);
        std::vector<Int> got;
        REQUIRE(solve_integral(M, b, got));
        CHECK(mat_vec(M, got) == b);
    }
}
