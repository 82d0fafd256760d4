#include <doctest.h>

#include <random>

#include "hfpss/abgroup.hpp"

using namespace hfpss;

namespace {

IntMatrix make(int rows, int cols, std::initializer_list<long> vals) {
    IntMatrix m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = *it++;
    return m;
}

}  // namespace

TEST_CASE("presentation to invariant factors") {
    // Z^2 / <2e1> = Z (+) Z/2
    FgAbGroup g = group_from_presentation(make(1, 2, {2, 0}), {"x", "y"});
    CHECK(g.free_rank == 1);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 2);
    CHECK(g.describe() == "Z (+) Z/2");

    // Z^2 / <(2,0),(0,4)> = Z/2 (+) Z/4
    FgAbGroup h = group_from_presentation(make(2, 2, {2, 0, 0, 4}), {"x", "y"});
    CHECK(h.free_rank == 0);
    CHECK(h.torsion == std::vector<mpz_class>{2, 4});
    CHECK(h.describe() == "Z/2 (+) Z/4");

    // non-diagonal relations reduce to the same invariants
    FgAbGroup k = group_from_presentation(make(2, 2, {2, 4, 0, 4}), {"x", "y"});
    CHECK(k.torsion == std::vector<mpz_class>{2, 4});

    CHECK(group_from_presentation(make(1, 1, {1}), {"x"}).is_trivial());
}

TEST_CASE("describe and constructors") {
    CHECK(FgAbGroup::trivial().describe() == "0");
    CHECK(FgAbGroup::cyclic(8, "s").describe() == "Z/8");
    CHECK(FgAbGroup::free_group(2, {"a", "b"}).describe() == "Z (+) Z");
    CHECK(FgAbGroup::free_group(1, {"a"}, true).describe() == "Z2");
    CHECK(FgAbGroup::cyclic(4, "s").exponent() == 4);
    CHECK(FgAbGroup::free_group(1, {"a"}).exponent() == 1);
}

TEST_CASE("invariant checking rejects malformed groups") {
    FgAbGroup bad;
    bad.torsion = {4, 2};  // not a divisibility chain
    bad.generator_names = {"a", "b"};
    CHECK_THROWS_AS(bad.check_invariants(), std::invalid_argument);

    FgAbGroup one;
    one.torsion = {1};
    one.generator_names = {"a"};
    CHECK_THROWS_AS(one.check_invariants(), std::invalid_argument);
}

TEST_CASE("format_combination") {
    std::vector<std::string> names = {"a", "b"};
    CHECK(format_combination({1, 0}, names) == "a");
    CHECK(format_combination({2, 0}, names) == "2a");
    CHECK(format_combination({1, -1}, names) == "a-b");
    CHECK(format_combination({0, -1}, names) == "-b");
    CHECK(format_combination({0, 0}, names) == "0");
}

TEST_CASE("subquotient of a cyclic group") {
    // Z --4--> Z/8 --1--> Z/2, ker/im = <2>/<4> = Z/2
    FgAbGroup b = FgAbGroup::cyclic(8, "a");
    FgAbGroup c = FgAbGroup::cyclic(2, "c");
    FgAbGroup a_free = FgAbGroup::free_group(1, {"x"});
    IntMatrix f = make(1, 1, {4});
    IntMatrix g = make(1, 1, {1});
    FgAbGroup q = subquotient(f, b, g, c);
    CHECK(q.describe() == "Z/2");
    CHECK(q.generator_names == std::vector<std::string>{"2a"});
    (void)a_free;
}

TEST_CASE("subquotient checks the composite") {
    FgAbGroup b = FgAbGroup::cyclic(8, "a");
    FgAbGroup c = FgAbGroup::cyclic(2, "c");
    // g o f = 1 != 0 in Z/2
    CHECK_THROWS_AS(subquotient(make(1, 1, {1}), b, make(1, 1, {1}), c), CompositionNonzero);
}

TEST_CASE("full kernel and zero image") {
    FgAbGroup b;
    b.free_rank = 1;
    b.torsion = {4};
    b.generator_names = {"u", "v"};
    FgAbGroup q = subquotient(IntMatrix(2, 0), b, IntMatrix(0, 2), FgAbGroup::trivial());
    CHECK(q.same_invariants(b));
}

TEST_CASE("subquotient order divides the middle order") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        FgAbGroup b;
        b.torsion = {2, 8};
        b.generator_names = {"x", "y"};
        IntMatrix f(2, 1), g(1, 2);
        FgAbGroup c = FgAbGroup::cyclic(2, "c");
        // build a random well-defined pair with g o f = 0 in C
        f.at(0, 0) = coef(rng);
        f.at(1, 0) = 2 * coef(rng);
        g.at(0, 0) = coef(rng);
        g.at(0, 1) = coef(rng) * 4;  // kills the order-8 part into Z/2... not always; retry below
        IntMatrix comp = g * f;
        if (comp.at(0, 0) % 2 != 0) continue;
        if (!map_well_defined(f, FgAbGroup::free_group(1, {"a"}), b)) continue;
        if (!map_well_defined(g, b, c)) continue;
        FgAbGroup q = subquotient(f, b, g, c);
        CHECK(q.free_rank == 0);
        CHECK(b.torsion_order() % q.torsion_order() == 0);
    }
}

TEST_CASE("pro2 propagates through subquotients") {
    FgAbGroup b = FgAbGroup::free_group(1, {"u"}, true);
    FgAbGroup q = subquotient(IntMatrix(1, 0), b, IntMatrix(0, 1), FgAbGroup::trivial());
    CHECK(q.pro2);
    CHECK(q.describe() == "Z2");
}
