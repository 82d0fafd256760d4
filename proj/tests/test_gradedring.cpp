#include <doctest.h>

#include "hfpss/gradedring.hpp"

using namespace hfpss;

namespace {

RingPresentation e2ring() {
    RingPresentation p;
    p.generators = {{"a", {4, 0, 0}, 0}, {"h1", {2, 1, 0}, 0}, {"z", {0, 2, 0}, 2}};
    p.invertible = {false, false, false};
    p.relations.push_back({2, {0, 1, 0}, {}});                  // 2 h1 -> 0
    p.relations.push_back({1, {1, 0, 1}, {{1, {0, 2, 0}}}});    // a z -> h1^2
    return p;
}

RingPresentation classicring() {
    RingPresentation p;
    p.generators = {{"a", {4, 0, 0}, 0}, {"h1", {2, 1, 0}, 0}};
    p.invertible = {true, false};
    p.relations.push_back({2, {0, 1}, {}});
    return p;
}

RingPresentation kqring() {
    RingPresentation p;
    p.has_weights = true;
    p.generators = {{"a", {4, 0, 2}, 0},
                    {"b", {8, 0, 4}, 0},
                    {"tau", {0, 0, -1}, 0},
                    {"h1", {1, 0, 1}, 0}};
    p.invertible = {false, true, false, false};
    p.relations.push_back({2, {0, 0, 0, 1}, {}});
    p.relations.push_back({1, {0, 0, 1, 3}, {}});
    p.relations.push_back({1, {2, 0, 0, 0}, {{4, {0, 1, 0, 0}}}});
    p.relations.push_back({1, {1, 0, 0, 1}, {}});
    return p;
}

std::string nf(const RingPresentation& p, const std::string& text) {
    return p.format_polynomial(p.normalize(p.parse_polynomial(text)));
}

}  // namespace

TEST_CASE("rewriting in the fixed point E2 ring") {
    auto p = e2ring();
    CHECK(p.validate().empty());
    CHECK(p.signs_unambiguous());
    CHECK(nf(p, "a*z") == "h1^2");
    CHECK(nf(p, "2h1^3") == "0");
    CHECK(nf(p, "h1^4") == "h1^4");      // h1^4 is already normal
    CHECK(nf(p, "a^2*z^2") == "h1^4");   // and a^2 z^2 reduces to it
    CHECK(nf(p, "a^2*z") == "a*h1^2");
    CHECK(nf(p, "h1^2 + a*z") == "0");  // 2 h1^2 dies by the coefficient rule
    CHECK(nf(p, "h1^2 - a*z") == "0");
    CHECK(nf(p, "a + a") == "2*a");
}

TEST_CASE("parsing and formatting round-trip") {
    auto p = e2ring();
    CHECK(p.format_polynomial(p.parse_polynomial("2a + h1^2*z")) == "h1^2*z+2*a");
    CHECK(p.format_polynomial(p.parse_polynomial("0")) == "0");
    CHECK(p.format_polynomial(p.parse_polynomial("-h1")) == "-h1");
    CHECK(p.format_monomial({0, 0, 0}) == "1");
    CHECK_THROWS_AS(p.parse_polynomial("q^2"), std::invalid_argument);
    CHECK_THROWS_AS(p.parse_polynomial("a^"), std::invalid_argument);
}

TEST_CASE("negative exponents need invertibility") {
    auto c = classicring();
    CHECK(c.validate().empty());
    CHECK(c.monomial_valid({-2, 3}));
    CHECK(nf(c, "a^-1*h1^3") == "a^-1*h1^3");
    auto p = e2ring();
    CHECK_FALSE(p.monomial_valid({-1, 0, 0}));
}

TEST_CASE("orientation violations are reported") {
    RingPresentation p;
    p.generators = {{"x", {2, 0, 0}, 0}, {"y", {2, 0, 0}, 0}};
    p.invertible = {false, false};
    p.relations.push_back({1, {0, 1}, {{1, {1, 0}}}});  // y -> x, but x > y in the order
    CHECK_FALSE(p.validate().empty());

    RingPresentation q;
    q.generators = {{"x", {2, 0, 0}, 0}, {"y", {4, 0, 0}, 0}};
    q.invertible = {false, false};
    q.relations.push_back({1, {2, 0}, {{1, {0, 1}}}});  // x^2 -> y: homogeneous, oriented
    CHECK(q.validate().empty());
    q.relations.push_back({1, {0, 1}, {{1, {1, 0}}}});  // y -> x: inhomogeneous
    CHECK_FALSE(q.validate().empty());
}

TEST_CASE("nonterminating rewriting is detected") {
    RingPresentation p;
    p.generators = {{"x", {2, 0, 0}, 0}, {"y", {2, 0, 0}, 0}};
    p.invertible = {false, false};
    // x -> y -> x: never validates, and normalize must bail out
    p.relations.push_back({1, {1, 0}, {{1, {0, 1}}}});
    p.relations.push_back({1, {0, 1}, {{1, {1, 0}}}});
    CHECK_THROWS_AS(p.normalize(p.parse_polynomial("x"), 100), NonTerminating);
}

TEST_CASE("monomial orders from coefficient rules and generator data") {
    auto p = e2ring();
    CHECK(p.monomial_order({0, 1, 0}) == 2);  // 2 h1 = 0
    CHECK(p.monomial_order({0, 3, 0}) == 2);
    CHECK(p.monomial_order({0, 0, 1}) == 2);  // z carries order 2 as generator data
    CHECK(p.monomial_order({1, 0, 0}) == 0);  // a is free
    CHECK(p.monomial_order({0, 0, 0}) == 0);
}

TEST_CASE("basis enumeration in fixed bidegrees") {
    auto p = e2ring();
    DegreeWindow w{-18, 26, 0, 14};
    auto b1 = basis_in_bidegree(p, 2, 1, w);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].name == "h1");
    CHECK(b1[0].order == 2);
    auto b2 = basis_in_bidegree(p, 4, 0, w);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0].name == "a");
    CHECK(b2[0].order == 0);
    CHECK(basis_in_bidegree(p, 4, 1, w).empty());
    auto b4 = basis_in_bidegree(p, 4, 2, w);  // a z is not normal, only h1^2 remains
    REQUIRE(b4.size() == 1);
    CHECK(b4[0].name == "h1^2");
    auto b5 = basis_in_bidegree(p, 4, 4, w);  // h1^2 z
    REQUIRE(b5.size() == 1);
    CHECK(b5[0].name == "h1^2*z");

    auto g = basis_group(p, b1, true);
    CHECK(g.describe() == "Z/2");
}

TEST_CASE("uncertifiable enumerations raise instead of lying") {
    auto kq = kqring();
    DegreeWindow w{0, 8, 0, 0};
    // without a weight constraint, tau^k h1^k floods degree (k, 0)
    CHECK_THROWS_AS(basis_in_bidegree(kq, 2, 0, w), WindowExceeded);
    // with weight 0 it is finite
    auto b = basis_in_bidegree(kq, 2, 0, w, 0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].name == "tau^2*h1^2");
}

TEST_CASE("weight zero line of the hermitian ring") {
    auto kq = kqring();
    CHECK(kq.validate().empty());
    auto line = weight_zero_line(kq, 0, 8);
    REQUIRE(line.size() == 9);
    std::vector<std::string> want = {"Z2", "Z/2", "Z/2", "0", "Z2", "0", "0", "0", "Z2"};
    for (int t = 0; t <= 8; ++t) {
        CHECK(line[static_cast<size_t>(t)].first == t);
        CHECK(line[static_cast<size_t>(t)].second.describe() == want[static_cast<size_t>(t)]);
    }
    CHECK(line[4].second.generator_names == std::vector<std::string>{"a*tau^2"});
    CHECK(line[8].second.generator_names == std::vector<std::string>{"b*tau^4"});
}

TEST_CASE("confluence probe") {
    CHECK(confluence_violations(e2ring(), 4).empty());
    CHECK(confluence_violations(classicring(), 4).empty());
    CHECK(confluence_violations(kqring(), 3).empty());

    RingPresentation bad;
    bad.generators = {{"x", {2, 0, 0}, 0}, {"y", {2, 0, 0}, 0}};
    bad.invertible = {false, false};
    bad.relations.push_back({1, {1, 1}, {}});                  // x y -> 0
    bad.relations.push_back({1, {2, 0}, {{1, {0, 2}}}});       // x^2 -> y^2
    // x^2 y reduces to both 0 and y^3
    CHECK_FALSE(confluence_violations(bad, 3).empty());
}

TEST_CASE("sign ambiguity detection") {
    RingPresentation p;
    p.generators = {{"e", {1, 0, 0}, 0}};
    p.invertible = {false};
    CHECK_FALSE(p.signs_unambiguous());  // 2 e^2 does not vanish
    CHECK(kqring().signs_unambiguous());
    CHECK(classicring().signs_unambiguous());
}

TEST_CASE("polynomial arithmetic normalizes") {
    auto p = e2ring();
    auto az = p.parse_polynomial("a*z");
    auto h2 = p.parse_polynomial("h1^2");
    CHECK(p.format_polynomial(p.add(az, h2)) == "0");  // 2 h1^2 = 0
    CHECK(p.format_polynomial(p.multiply(p.parse_polynomial("a"), p.parse_polynomial("z"))) ==
          "h1^2");
    CHECK(p.format_polynomial(p.scale(2, p.parse_polynomial("h1"))) == "0");
}
