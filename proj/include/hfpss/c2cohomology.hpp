#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hfpss/abgroup.hpp"

namespace hfpss {

struct InvalidC2Module : std::runtime_error {
    explicit InvalidC2Module(const std::string& what) : std::runtime_error(what) {}
};

struct OracleLimitExceeded : std::runtime_error {
    explicit OracleLimitExceeded(int s, int limit)
        : std::runtime_error("bar complex oracle limited to s <= " + std::to_string(limit) +
                             ", requested s = " + std::to_string(s)) {}
};

// An involution sigma on a finitely generated abelian group, given on
// generators. Plain data; call `validate` (or any cohomology function, which
// validates first) to check sigma^2 = id modulo the relations.
struct C2Module {
    FgAbGroup underlying;
    IntMatrix involution;

    static C2Module trivial_action(FgAbGroup g) {
        int n = g.num_generators();
        return {std::move(g), IntMatrix::identity(n)};
    }
    static C2Module sign_action(FgAbGroup g) {
        int n = g.num_generators();
        IntMatrix s(n, n);
        for (int i = 0; i < n; ++i) s.at(i, i) = -1;
        return {std::move(g), s};
    }
    static C2Module zero() { return {FgAbGroup::trivial(), IntMatrix(0, 0)}; }
};

// Empty list iff the module is valid.
std::vector<std::string> validate(const C2Module& m);

// H^s(C2; M) from the 2-periodic resolution:
//   H^0 = ker(1-sigma), H^odd = ker(N)/im(1-sigma), H^even>=2 = ker(1-sigma)/im(N)
// where N = 1+sigma. Throws InvalidC2Module on a bad module.
FgAbGroup cohomology_periodic(const C2Module& m, int s);

// Independent oracle: cohomology of the inhomogeneous cochain complex
// C^n = Maps(C2^n, M). Exponential in s; throws OracleLimitExceeded past the
// limit.
FgAbGroup cohomology_bar(const C2Module& m, int s, int limit = 8);

}  // namespace hfpss
