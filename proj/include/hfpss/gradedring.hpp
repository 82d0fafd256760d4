#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfpss/abgroup.hpp"

namespace hfpss {

struct NonTerminating : std::runtime_error {
    explicit NonTerminating(const std::string& what) : std::runtime_error(what) {}
};

struct WindowExceeded : std::runtime_error {
    explicit WindowExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal cohomological grading (t, s) plus an optional motivic weight.
// Chart positions use Adams indexing (stem, filtration) = (t - s, s).
struct Degree {
    int t = 0;
    int s = 0;
    int w = 0;

    int stem() const { return t - s; }
    Degree operator+(const Degree& o) const { return {t + o.t, s + o.s, w + o.w}; }
    Degree operator*(int k) const { return {t * k, s * k, w * k}; }
    bool operator==(const Degree& o) const = default;
};

struct RingGenerator {
    std::string name;
    Degree degree;
    mpz_class coefficient_order = 0;  // 0 = free (or pro-2); otherwise a power of 2
};

// A monomial is an exponent vector over the presentation's generators;
// negative exponents are legal only on invertible generators.
using Exponents = std::vector<int>;

struct Term {
    mpz_class coeff;
    Exponents mono;

    bool operator==(const Term& o) const { return coeff == o.coeff && mono == o.mono; }
};

// Terms sorted strictly descending in the monomial order, nonzero
// coefficients, no duplicate monomials.
using Polynomial = std::vector<Term>;

// Oriented rule  lhs_coeff * lhs  ->  rhs.  lhs_coeff > 1 gives a coefficient
// rule such as 2*h1 -> 0; lhs_coeff == 1 gives a monomial rule such as
// a*z -> h1^2.
struct RewriteRule {
    mpz_class lhs_coeff = 1;
    Exponents lhs;
    Polynomial rhs;
};

// Rectangular degree bounds used to size basis enumeration.
struct DegreeWindow {
    int t_min = 0;
    int t_max = 0;
    int s_min = 0;
    int s_max = 0;
};

struct RingPresentation {
    std::vector<RingGenerator> generators;
    std::vector<RewriteRule> relations;
    std::vector<bool> invertible;  // parallel to generators
    bool has_weights = false;

    int num_generators() const { return static_cast<int>(generators.size()); }
    int gen_index(const std::string& name) const;  // -1 if absent
    bool is_invertible(int g) const { return g < static_cast<int>(invertible.size()) && invertible[g]; }

    Degree monomial_degree(const Exponents& m) const;
    Exponents unit() const { return Exponents(generators.size(), 0); }

    // Degree-lexicographic order: compare (t, s, w), then exponents in
    // declaration order (forward lex). Returns <0, 0, >0.
    int monomial_cmp(const Exponents& a, const Exponents& b) const;

    // True when negative exponents occur only on invertible generators.
    bool monomial_valid(const Exponents& m) const;

    // Exhaustive leftmost-outermost rewriting to a fixed point.
    // Throws NonTerminating past max_steps applications.
    Polynomial normalize(Polynomial p, int max_steps = 100000) const;
    Polynomial normalize_term(const mpz_class& coeff, const Exponents& mono,
                              int max_steps = 100000) const;

    // Cyclic order of a normal-form monomial: minimum over coefficient rules
    // whose lhs divides it and over coefficient_orders of its generators.
    // 0 means free.
    mpz_class monomial_order(const Exponents& m) const;

    std::string format_monomial(const Exponents& m) const;  // e.g. "h1^2*z", "1"
    std::string format_polynomial(const Polynomial& p) const;
    Polynomial parse_polynomial(const std::string& text) const;  // throws std::invalid_argument

    // Polynomial algebra (results normalized).
    Polynomial add(const Polynomial& a, const Polynomial& b) const;
    Polynomial scale(const mpz_class& c, const Polynomial& a) const;
    Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
    Polynomial multiply_monomial(const Exponents& m, const Polynomial& a) const;

    // Structural checks: unique names, rule orientation (lhs greater than
    // every rhs monomial, equal multidegree or rhs = 0), exponent validity.
    std::vector<std::string> validate() const;

    // Koszul-sign hygiene: for every pair of odd-stem generators the doubled
    // product must vanish, so commuting factors never changes a value.
    bool signs_unambiguous() const;
};

struct BasisElement {
    Exponents mono;
    mpz_class order;  // 0 = free
    std::string name;
};

// Normal-form monomials of exact internal degree (t, s) (and weight, when
// constrained), enumerated inside exponent caps derived from the window.
// Throws WindowExceeded if completeness cannot be certified (an enumerated
// monomial touches the cap), e.g. weight-graded rings queried without a
// weight constraint.
std::vector<BasisElement> basis_in_bidegree(const RingPresentation& p, int t, int s,
                                            const DegreeWindow& window,
                                            std::optional<int> weight = std::nullopt);

// Group spanned by the returned basis: free summands first, torsion ascending.
FgAbGroup basis_group(const RingPresentation& p, const std::vector<BasisElement>& basis,
                      bool pro2);

// For each t in [t_min, t_max], the group spanned by weight-0 normal-form
// monomials of degree t (any filtration).
std::vector<std::pair<int, FgAbGroup>> weight_zero_line(const RingPresentation& p, int t_min,
                                                        int t_max);

// Local confluence probe: for every term c*m with 1 <= c <= coeff_bound and
// exponents bounded by exp_bound (negative side included for invertible
// generators) and every pair of rules applicable to it, both application
// orders must normalize to the same polynomial. Returns descriptions of
// failures.
std::vector<std::string> confluence_violations(const RingPresentation& p, int exp_bound,
                                               int coeff_bound = 3);

}  // namespace hfpss
