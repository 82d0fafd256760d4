#include <doctest.h>

#include <random>

#include "hfpss/intmatrix.hpp"

using namespace hfpss;

namespace {

IntMatrix make(int rows, int cols, std::initializer_list<long> vals) {
    IntMatrix m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = *it++;
    return m;
}

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

// random product of elementary row operations on the identity
IntMatrix random_unimodular(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3);
    IntMatrix u = IntMatrix::identity(n);
    for (int step = 0; step < 3 * n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
    }
    return u;
}

void check_snf(const IntMatrix& a) {
    SnfResult r = smith_normal_form(a);
    CHECK(r.u * a * r.v == r.d);
    CHECK(r.u * r.u_inv == IntMatrix::identity(a.rows));
    CHECK(r.v * r.v_inv == IntMatrix::identity(a.cols));
    int n = std::min(a.rows, a.cols);
    for (int i = 0; i < n; ++i) {
        CHECK(r.d.at(i, i) >= 0);
        if (i + 1 < n && r.d.at(i + 1, i + 1) != 0) {
            REQUIRE(r.d.at(i, i) != 0);
            CHECK(r.d.at(i + 1, i + 1) % r.d.at(i, i) == 0);
        }
    }
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (i != j) CHECK(r.d.at(i, j) == 0);
}

}  // namespace

TEST_CASE("snf of a small matrix") {
    IntMatrix a = make(2, 2, {2, 4, 6, 8});
    auto div = elementary_divisors(a);
    REQUIRE(div.size() == 2);
    CHECK(div[0] == 2);
    CHECK(div[1] == 4);  // det -16, d1*d2 = 16
    check_snf(a);
}

TEST_CASE("snf handles zero and identity") {
    check_snf(IntMatrix(3, 2));
    check_snf(IntMatrix::identity(4));
    CHECK(elementary_divisors(IntMatrix(2, 5)).empty());
}

TEST_CASE("snf random property suite") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        int rows = 1 + trial % 5, cols = 1 + (trial / 2) % 5;
        check_snf(random_matrix(rng, rows, cols, 9));
    }
}

TEST_CASE("invariant factors are unimodular invariants") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + trial % 4;
        IntMatrix a = random_matrix(rng, n, n, 6);
        IntMatrix p = random_unimodular(rng, n), q = random_unimodular(rng, n);
        CHECK(elementary_divisors(a) == elementary_divisors(p * a * q));
    }
}

TEST_CASE("kernel basis spans the kernel") {
    IntMatrix a = make(2, 3, {1, 2, 3, 2, 4, 6});  // rank 1
    IntMatrix k = kernel_basis(a);
    CHECK(k.cols == 2);
    CHECK((a * k).is_zero());

    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 2 + trial % 3, 2 + (trial / 3) % 4, 7);
        IntMatrix ker = kernel_basis(m);
        CHECK((m * ker).is_zero());
        CHECK(elementary_divisors(ker).size() ==
              static_cast<size_t>(ker.cols));  // columns independent
    }
}

TEST_CASE("solver finds exact preimages and rejects non-images") {
    IntMatrix a = make(2, 2, {2, 0, 0, 3});
    SnfSolver solver(a);
    auto x = solver.solve({4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solver.solve({1, 0}).has_value());

    std::mt19937 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m = random_matrix(rng, 3, 3, 5);
        SnfSolver s(m);
        IntMatrix v = random_matrix(rng, 3, 1, 4);
        std::vector<mpz_class> b;
        IntMatrix mv = m * v;
        for (int i = 0; i < 3; ++i) b.push_back(mv.at(i, 0));
        auto sol = s.solve(b);
        REQUIRE(sol.has_value());
        IntMatrix x(3, 1);
        for (int i = 0; i < 3; ++i) x.at(i, 0) = (*sol)[i];
        CHECK(m * x == mv);
    }
}

TEST_CASE("lattice membership") {
    IntMatrix gens = make(2, 2, {2, 0, 0, 4});
    CHECK(lattice_contains(gens, {2, 4}));
    CHECK(lattice_contains(gens, {0, 0}));
    CHECK_FALSE(lattice_contains(gens, {1, 0}));
    CHECK_FALSE(lattice_contains(gens, {2, 2}));
}
