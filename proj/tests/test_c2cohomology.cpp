#include <doctest.h>

#include "hfpss/c2cohomology.hpp"

using namespace hfpss;

namespace {

C2Module swap_action(FgAbGroup g) {
    int n = g.num_generators();
    REQUIRE(n % 2 == 0);
    IntMatrix s(n, n);
    for (int i = 0; i < n; i += 2) {
        s.at(i, i + 1) = 1;
        s.at(i + 1, i) = 1;
    }
    return {std::move(g), std::move(s)};
}

std::string h(const C2Module& m, int s) { return cohomology_periodic(m, s).describe(); }

}  // namespace

TEST_CASE("trivial action on Z") {
    C2Module m = C2Module::trivial_action(FgAbGroup::free_group(1, {"x"}));
    CHECK(h(m, 0) == "Z");
    CHECK(h(m, 1) == "0");
    CHECK(h(m, 2) == "Z/2");
    CHECK(h(m, 3) == "0");
    CHECK(h(m, 4) == "Z/2");
}

TEST_CASE("sign action on Z") {
    C2Module m = C2Module::sign_action(FgAbGroup::free_group(1, {"x"}));
    CHECK(h(m, 0) == "0");
    CHECK(h(m, 1) == "Z/2");
    CHECK(h(m, 2) == "0");
    CHECK(h(m, 3) == "Z/2");
}

TEST_CASE("induced module is cohomologically trivial above degree 0") {
    C2Module m = swap_action(FgAbGroup::free_group(2, {"x", "y"}));
    CHECK(h(m, 0) == "Z");
    for (int s = 1; s <= 5; ++s) CHECK(h(m, s) == "0");
}

TEST_CASE("trivial action on Z/4") {
    C2Module m = C2Module::trivial_action(FgAbGroup::cyclic(4, "x"));
    CHECK(h(m, 0) == "Z/4");
    CHECK(h(m, 1) == "Z/2");
    CHECK(h(m, 2) == "Z/2");
}

TEST_CASE("zero module") {
    for (int s = 0; s <= 3; ++s) CHECK(cohomology_periodic(C2Module::zero(), s).is_trivial());
}

TEST_CASE("periodicity above degree zero") {
    std::vector<C2Module> mods = {
        C2Module::trivial_action(FgAbGroup::free_group(1, {"x"})),
        C2Module::sign_action(FgAbGroup::cyclic(8, "x")),
        swap_action(FgAbGroup::free_group(2, {"x", "y"})),
        C2Module::trivial_action(FgAbGroup::cyclic(16, "x")),
    };
    for (const auto& m : mods)
        for (int s = 1; s <= 4; ++s)
            CHECK(cohomology_periodic(m, s).same_invariants(cohomology_periodic(m, s + 2)));
}

TEST_CASE("bar complex oracle agrees with the periodic resolution") {
    std::vector<C2Module> mods = {
        C2Module::trivial_action(FgAbGroup::free_group(1, {"x"})),
        C2Module::sign_action(FgAbGroup::free_group(1, {"x"})),
        C2Module::trivial_action(FgAbGroup::cyclic(4, "x")),
        C2Module::sign_action(FgAbGroup::cyclic(8, "x")),
        swap_action(FgAbGroup::free_group(2, {"x", "y"})),
    };
    FgAbGroup mixed;
    mixed.free_rank = 1;
    mixed.torsion = {2};
    mixed.generator_names = {"u", "w"};
    mods.push_back(C2Module::trivial_action(mixed));
    for (const auto& m : mods)
        for (int s = 0; s <= 4; ++s)
            CHECK(cohomology_bar(m, s).same_invariants(cohomology_periodic(m, s)));
}

TEST_CASE("oracle refuses degrees past its limit") {
    C2Module m = C2Module::trivial_action(FgAbGroup::cyclic(2, "x"));
    CHECK_THROWS_AS(cohomology_bar(m, 9), OracleLimitExceeded);
}

TEST_CASE("module validation") {
    // sigma^2 != id
    C2Module bad{FgAbGroup::free_group(1, {"x"}), IntMatrix(1, 1)};
    bad.involution.at(0, 0) = 2;
    CHECK_FALSE(validate(bad).empty());
    CHECK_THROWS_AS(cohomology_periodic(bad, 1), InvalidC2Module);

    // wrong involution shape
    C2Module shape{FgAbGroup::free_group(2, {"x", "y"}), IntMatrix::identity(1)};
    CHECK_FALSE(validate(shape).empty());

    // sigma^2 = id modulo relations is fine: sigma = 3 on Z/8
    C2Module mod8{FgAbGroup::cyclic(8, "x"), IntMatrix(1, 1)};
    mod8.involution.at(0, 0) = 3;
    CHECK(validate(mod8).empty());
    CHECK(h(mod8, 0) == "Z/2");  // ker(1 - 3) = ker(2 mod 8) = 4Z/8
}
