#include <doctest.h>

#include "hfpss/runner.hpp"

using namespace hfpss;

TEST_CASE("all built-in scenarios succeed end to end") {
    for (const auto& n : builtin_names()) {
        RunOutcome out = run_scenario(builtin(n));
        CHECK(out.exit_code == 0);
        CHECK(out.report["name"] == n);
    }
}

TEST_CASE("reruns are byte-identical") {
    for (const auto& n : {"ko-endo", "pic-kgl-2adic"}) {
        RunOutcome a = run_scenario(builtin(n));
        RunOutcome b = run_scenario(builtin(n));
        CHECK(a.report.dump(2) == b.report.dump(2));
        CHECK(render_chart_ascii(chart_input(a, 3)) == render_chart_ascii(chart_input(b, 3)));
        CHECK(render_chart_svg(chart_input(a, 0)) == render_chart_svg(chart_input(b, 0)));
    }
}

TEST_CASE("report contents for the endomorphism run") {
    RunOutcome out = run_scenario(builtin("ko-endo"));
    CHECK(out.report["presentation_match"]["all_match"] == true);
    CHECK(out.report["presentation_match"]["notes"].size() == 1);
    CHECK(out.report["solved_differentials"]["d3"]["a"] == "h1^3");
    CHECK(out.report["solved_differentials"]["d3"]["z"] == "h1*z^2");
    CHECK(out.report["unknown_slots"].empty());
    REQUIRE(out.verdicts.size() == 9);
    for (const auto& v : out.verdicts) CHECK(v.match);
}

TEST_CASE("picard report carries the verdict and taint marks") {
    RunOutcome out = run_scenario(builtin("pic-kgl-2adic"));
    const auto& v = out.report["verdict"];
    CHECK(v["conclusive"] == true);
    CHECK(v["conclusion"] == "Z (+) Z/4");
    REQUIRE(v["stem0_graded"].size() == 3);
    CHECK(v["stem0_graded"][0]["s"] == 0);
    CHECK_FALSE(v["stem0_graded"][0].contains("tainted"));
    CHECK(v["stem0_graded"][1]["tainted"] == true);
    CHECK(v["stem0_graded"][2]["tainted"] == true);
    CHECK(out.report["endo_unknown_slots"].empty());
    CHECK_FALSE(out.report["unknown_slots"].empty());
    for (const auto& f : out.report["unknown_slots"]) {
        int t = f["t"];
        CHECK((t == 1 || t == 3));
    }
}

TEST_CASE("weight-zero runs check the line") {
    RunOutcome out = run_scenario(builtin("kq-weight0"));
    CHECK(out.exit_code == 0);
    REQUIRE(out.weight_line.size() == 9);
    CHECK(out.weight_line[1].second.generator_names == std::vector<std::string>{"tau*h1"});
    CHECK(out.report["weight_zero_line"][4]["group"] == "Z2");
    CHECK_THROWS_AS(chart_input(out, 0), std::out_of_range);
}

TEST_CASE("expectation mismatches exit with status 2") {
    Scenario sc = builtin("ko-endo");
    FgAbGroup wrong;
    wrong.torsion = {4};
    wrong.generator_names = {"x"};
    sc.expected_abutment[1] = wrong;  // the 1-stem is Z/2, not Z/4
    RunOutcome out = run_scenario(sc);
    CHECK(out.exit_code == 2);

    Scenario pic = builtin("pic-kgl-2adic");
    pic.lower_bound = FgAbGroup::cyclic(2, "S");  // too small: inconclusive
    CHECK(run_scenario(pic).exit_code == 2);
}

TEST_CASE("invalid scenarios refuse to run") {
    Scenario sc = builtin("ko-endo");
    sc.differentials[0].target = "h1^2";
    CHECK_THROWS(run_scenario(sc));
}

TEST_CASE("charts are well formed") {
    RunOutcome out = run_scenario(builtin("pic-ko-classical"));
    std::string ascii = render_chart_ascii(chart_input(out, 3));
    CHECK(ascii.find("E3 page") != std::string::npos);
    CHECK(ascii.find("⊙") != std::string::npos);
    CHECK(ascii.find("•") != std::string::npos);
    CHECK(ascii.find("Z_2") != std::string::npos);               // legend
    CHECK(ascii.find("[dashed]") != std::string::npos);          // assumed-zero arrows
    CHECK(ascii.find("imported-stable") != std::string::npos);

    std::string svg = render_chart_svg(chart_input(out, 3));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("marker-end") != std::string::npos);

    CHECK_THROWS_AS(chart_input(out, 17), std::out_of_range);
}
