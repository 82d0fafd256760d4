#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hfpss/intmatrix.hpp"

namespace hfpss {

struct CompositionNonzero : std::runtime_error {
    CompositionNonzero() : std::runtime_error("subquotient: g o f != 0") {}
};

// Finitely generated abelian group in invariant-factor normal form.
// Generators are ordered free summands first, then torsion summands with
// d1 | d2 | ... and every di >= 2. `pro2` tags free summands that stand for
// the 2-adic integers; it is display metadata and never affects arithmetic.
struct FgAbGroup {
    int free_rank = 0;
    std::vector<mpz_class> torsion;
    std::vector<std::string> generator_names;
    bool pro2 = false;

    int num_generators() const { return free_rank + static_cast<int>(torsion.size()); }
    bool is_trivial() const { return num_generators() == 0; }

    // 0 for a free generator, the invariant factor otherwise.
    mpz_class order_of_generator(int i) const {
        return i < free_rank ? mpz_class(0) : torsion[static_cast<size_t>(i - free_rank)];
    }

    mpz_class torsion_order() const {
        mpz_class o = 1;
        for (const auto& d : torsion) o *= d;
        return o;
    }

    // Largest invariant factor (1 if torsion-free).
    mpz_class exponent() const { return torsion.empty() ? mpz_class(1) : torsion.back(); }

    bool same_invariants(const FgAbGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }

    // Diagonal relation matrix (one row per torsion generator).
    IntMatrix relation_matrix() const;

    void check_invariants() const;  // throws std::invalid_argument on violation

    std::string describe() const;  // e.g. "Z (+) Z/4", "0"

    static FgAbGroup trivial() { return {}; }
    static FgAbGroup free_group(int rank, std::vector<std::string> names, bool pro2 = false);
    static FgAbGroup cyclic(const mpz_class& order, std::string name, bool pro2 = false);
};

// Formats an integer combination of named generators, e.g. "2a", "a-b".
std::string format_combination(const std::vector<mpz_class>& coeffs,
                               const std::vector<std::string>& names);

// Cokernel of the relation rows: Z^n / (row lattice of `relations`).
// `relations` must have n columns. Generator names of the result are integer
// combinations of `gen_names`.
FgAbGroup group_from_presentation(const IntMatrix& relations,
                                  const std::vector<std::string>& gen_names);

// Does the generator matrix f define a homomorphism B -> C?  (f maps the
// order of every generator of B into the relation lattice of C.)
bool map_well_defined(const IntMatrix& f, const FgAbGroup& b, const FgAbGroup& c);

// ker(g)/im(f) for maps A --f--> B --g--> C given on generators (f has one
// column per generator of A, one row per generator of B; g likewise from B
// to C). Throws CompositionNonzero unless g o f = 0 as a map to C.
// Generator names of the result are integer combinations of B's names.
FgAbGroup subquotient(const IntMatrix& f, const FgAbGroup& b,
                      const IntMatrix& g, const FgAbGroup& c);

}  // namespace hfpss
