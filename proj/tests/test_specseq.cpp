#include <doctest.h>

#include "hfpss/specseq.hpp"

using namespace hfpss;

namespace {

RingPresentation e2ring() {
    RingPresentation p;
    p.generators = {{"a", {4, 0, 0}, 0}, {"h1", {2, 1, 0}, 0}, {"z", {0, 2, 0}, 2}};
    p.invertible = {false, false, false};
    p.relations.push_back({2, {0, 1, 0}, {}});
    p.relations.push_back({1, {1, 0, 1}, {{1, {0, 2, 0}}}});
    return p;
}

CoefficientFamily ku_family(int t_lo, int t_hi, bool connective) {
    CoefficientFamily f;
    for (int t = t_lo; t <= t_hi; ++t) {
        if (t % 2 || (connective && t < 0)) continue;
        auto g = FgAbGroup::free_group(1, {"v"}, true);
        int q = ((t % 4) + 4) % 4;
        f.modules[t] = (q == 2) ? C2Module::sign_action(g) : C2Module::trivial_action(g);
    }
    return f;
}

SsInputs ko_inputs() {
    SsInputs in;
    in.window = Window{};
    in.family = ku_family(-40, 60, true);
    in.ring = e2ring();
    in.seeds[3] = {{"a", in.ring->parse_polynomial("h1^3")}};
    in.permanent = {"h1"};
    return in;
}

}  // namespace

TEST_CASE("E2 from group cohomology matches the ring picture") {
    auto in = ko_inputs();
    Page coh = build_e2(in.family, in.window);
    CHECK(coh.at(0, 0).describe() == "Z2");
    CHECK(coh.at(1, 2).describe() == "Z/2");   // H^1 of the sign action, stem 1
    CHECK(coh.at(2, 2).describe() == "0");
    CHECK(coh.at(2, 4).describe() == "Z/2");   // h1^2
    CHECK(coh.at(1, 4).describe() == "0");     // checkerboard
    CHECK(coh.at(4, 4).describe() == "Z/2");   // z^2
    CHECK(coh.at(0, 2).describe() == "0");

    MatchReport m = match_presentation(coh, *in.ring, in.window);
    CHECK(m.all_match);
    CHECK(m.mismatches.empty());
    REQUIRE(m.notes.size() == 1);  // the order of z is coefficient data, not a relation
    CHECK(m.notes[0].find("z") != std::string::npos);
}

TEST_CASE("checkerboard vanishing for ku coefficients") {
    auto in = ko_inputs();
    Page coh = build_e2(in.family, in.window);
    for (const auto& [key, cell] : coh.cells) {
        CHECK((key.t % 2) == 0);                      // odd rows vanish
        CHECK(((key.t / 2 - key.s) % 2 + 2) % 2 == 0);  // and s = t/2 (mod 2)
    }
}

TEST_CASE("Koszul signed Leibniz differentials square to zero") {
    auto in = ko_inputs();
    Page e2 = build_e2_from_ring(*in.ring, in.window);
    GenDiffs d3 = solve_generator_differentials(*in.ring, e2, in.seeds[3], in.permanent, 3);
    PageDifferential d = propagate_leibniz(*in.ring, e2, d3, 3, {"a"});
    // d o d = 0 on every cell where the composite is defined
    for (const auto& [key, entry] : d.maps) {
        const DiffEntry* next = d.at(key.s + 3, key.t + 2);
        if (!next) continue;
        IntMatrix comp = next->map * entry.map;
        const FgAbGroup& target = e2.at(key.s + 6, key.t + 4);
        for (int i = 0; i < comp.rows; ++i)
            for (int j = 0; j < comp.cols; ++j) {
                mpz_class o = target.order_of_generator(i);
                CHECK((o == 0 ? comp.at(i, j) == 0 : comp.at(i, j) % o == 0));
            }
    }
}

TEST_CASE("the seed forces the remaining generator differentials") {
    auto in = ko_inputs();
    Page e2 = build_e2_from_ring(*in.ring, in.window);
    GenDiffs solved = solve_generator_differentials(*in.ring, e2, in.seeds[3], in.permanent, 3);
    CHECK(in.ring->format_polynomial(solved.at("a")) == "h1^3");
    CHECK(in.ring->format_polynomial(solved.at("h1")) == "0");
    // consistency with a z = h1^2 forces d3(z) = h1 z^2, the only candidate
    CHECK(in.ring->format_polynomial(solved.at("z")) == "h1*z^2");
}

TEST_CASE("free-to-free assignments cannot be enumerated") {
    RingPresentation p;
    p.generators = {{"x", {5, 0, 0}, 0}, {"y", {7, 3, 0}, 0}};
    p.invertible = {false, false};
    Page e2 = build_e2_from_ring(p, Window{-4, 12, 14}, 6, false);
    CHECK_THROWS_AS(solve_generator_differentials(p, e2, {}, {}, 3), AmbiguousAssignment);
}

TEST_CASE("inconsistent seeds are rejected") {
    RingPresentation p;
    // x has order 2 but would hit a target of order 4
    p.generators = {{"x", {5, 0, 0}, 2}, {"y", {7, 3, 0}, 4}};
    p.invertible = {false, false};
    Page e2 = build_e2_from_ring(p, Window{-4, 12, 14});
    GenDiffs seeds = {{"x", p.parse_polynomial("y")}};
    CHECK_THROWS_AS(solve_generator_differentials(p, e2, seeds, {}, 3), NoConsistentAssignment);
}

TEST_CASE("page turning takes homology") {
    auto in = ko_inputs();
    SsResult res = run_to_einfty(in);
    REQUIRE(res.pages.size() >= 3);
    const Page& e2 = res.pages[0];
    const Page& e3 = res.pages[1];
    const Page& e4 = res.pages[2];
    // d2 = 0, so E3 = E2 in the report window
    for (const auto& [key, cell] : e2.cells)
        if (e2.in_report(key.s, key.t))
            CHECK(e3.at(key.s, key.t).same_invariants(cell.group));
    // d3(a) = h1^3 kills the h1 tower above filtration 2 in stem 3
    CHECK(e2.at(3, 6).describe() == "Z/2");
    CHECK(e4.at(3, 6).describe() == "0");
    // and cuts the a-column to its doubles
    CHECK(e4.at(0, 4).describe() == "Z2");
    // E4 = E6 here: the sequence has collapsed
    CHECK(res.pages.back().r == in.max_page);
    for (const auto& [key, cell] : res.pages.back().cells)
        if (res.pages.back().in_report(key.s, key.t))
            CHECK(e4.at(key.s, key.t).same_invariants(cell.group));
}

TEST_CASE("ko abutment across the window") {
    SsResult res = run_to_einfty(ko_inputs());
    CHECK(res.flags.empty());
    CHECK(res.match);
    CHECK(res.match->all_match);

    std::map<int, FgAbGroup> expected;
    auto grp = [](int rank, std::vector<mpz_class> tors) {
        FgAbGroup g;
        g.free_rank = rank;
        g.torsion = std::move(tors);
        for (int i = 0; i < g.num_generators(); ++i)
            g.generator_names.push_back("e" + std::to_string(i));
        return g;
    };
    expected[0] = grp(1, {});
    expected[1] = grp(0, {2});
    expected[2] = grp(0, {2});
    expected[3] = grp(0, {});
    expected[4] = grp(1, {});
    expected[5] = grp(0, {});
    expected[6] = grp(0, {});
    expected[7] = grp(0, {});
    expected[8] = grp(1, {});

    std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>> gr;
    for (int stem = 0; stem <= 8; ++stem)
        gr.push_back({stem, stem_assoc_graded(res.final_page(), stem)});
    auto verdicts = check_abutment(gr, expected);
    REQUIRE(verdicts.size() == 9);
    for (const auto& v : verdicts) CHECK(v.match);
}

TEST_CASE("abutment checks fail on wrong ranks, orders and exponents") {
    FgAbGroup z4;
    z4.torsion = {4};
    z4.generator_names = {"x"};
    FgAbGroup z22;
    z22.torsion = {2, 2};
    z22.generator_names = {"x", "y"};
    FgAbGroup z2 = FgAbGroup::cyclic(2, "x");

    // gr = [Z/4] vs expected Z/2 (+) Z/2: order matches but the exponent does not divide
    auto v1 = check_abutment({{0, {{0, z4}}}}, {{0, z22}});
    REQUIRE(v1.size() == 1);
    CHECK_FALSE(v1[0].match);
    // gr = [Z/2, Z/2] vs expected Z/4: consistent (extension possible)
    auto v2 = check_abutment({{0, {{0, z2}, {1, z2}}}}, {{0, z4}});
    CHECK(v2[0].match);
    // rank mismatch
    auto v3 = check_abutment({{0, {{0, z2}}}}, {{0, FgAbGroup::free_group(1, {"x"})}});
    CHECK_FALSE(v3[0].match);
}

TEST_CASE("seeds on dead pages are rejected") {
    auto in = ko_inputs();
    in.seeds[4] = {{"z", in.ring->parse_polynomial("0")}};
    CHECK_THROWS_AS(run_to_einfty(in), std::invalid_argument);
}

TEST_CASE("unknown differentials are flagged honestly") {
    // cohomology-only input (no ring): nothing justifies d_r = 0
    SsInputs in;
    in.window = Window{0, 4, 6};
    in.family = ku_family(-20, 30, true);
    SsResult res = run_to_einfty(in);
    CHECK_FALSE(res.flags.empty());
    for (const auto& f : res.flags) {
        bool vanished_everywhere = res.final_page().at(f.s, f.t).is_trivial() &&
                                   res.pages[0].at(f.s, f.t).is_trivial();
        CHECK_FALSE(vanished_everywhere);
        CHECK(res.tainted.count({f.s, f.t}) == 1);
    }
}

TEST_CASE("permanent generator names suppress flags") {
    std::set<std::string> perm = {"h1"};
    CHECK(permanent_suppressed(FgAbGroup::cyclic(2, "h1"), perm));
    CHECK(permanent_suppressed(FgAbGroup::cyclic(4, "2h1"), perm));
    CHECK_FALSE(permanent_suppressed(FgAbGroup::cyclic(2, "h1*z"), perm));
    CHECK_FALSE(permanent_suppressed(FgAbGroup::trivial(), perm));
    FgAbGroup two;
    two.torsion = {2, 2};
    two.generator_names = {"h1", "w"};
    CHECK_FALSE(permanent_suppressed(two, perm));
}
