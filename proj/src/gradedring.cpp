#include "hfpss/gradedring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace hfpss {

int RingPresentation::gen_index(const std::string& name) const {
    for (int i = 0; i < num_generators(); ++i)
        if (generators[static_cast<size_t>(i)].name == name) return i;
    return -1;
}

Degree RingPresentation::monomial_degree(const Exponents& m) const {
    Degree d;
    for (int g = 0; g < num_generators(); ++g)
        if (m[static_cast<size_t>(g)] != 0)
            d = d + generators[static_cast<size_t>(g)].degree * m[static_cast<size_t>(g)];
    return d;
}

int RingPresentation::monomial_cmp(const Exponents& a, const Exponents& b) const {
    Degree da = monomial_degree(a), db = monomial_degree(b);
    if (da.t != db.t) return da.t < db.t ? -1 : 1;
    if (da.s != db.s) return da.s < db.s ? -1 : 1;
    if (da.w != db.w) return da.w < db.w ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

bool RingPresentation::monomial_valid(const Exponents& m) const {
    if (static_cast<int>(m.size()) != num_generators()) return false;
    for (int g = 0; g < num_generators(); ++g)
        if (m[static_cast<size_t>(g)] < 0 && !is_invertible(g)) return false;
    return true;
}

namespace {

bool divides(const Exponents& lhs, const Exponents& m) {
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] > 0 && m[i] < lhs[i]) return false;
    return true;
}

Exponents quotient(const Exponents& m, const Exponents& lhs) {
    Exponents q(m.size());
    for (size_t i = 0; i < m.size(); ++i) q[i] = m[i] - lhs[i];
    return q;
}

Exponents mono_mul(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

}  // namespace

namespace {

struct PolyBuilder {
    const RingPresentation& p;
    Polynomial terms;

    void add(const mpz_class& c, const Exponents& m) {
        if (c == 0) return;
        for (auto& t : terms)
            if (t.mono == m) {
                t.coeff += c;
                return;
            }
        terms.push_back({c, m});
    }

    Polynomial finish() {
        Polynomial out;
        for (auto& t : terms)
            if (t.coeff != 0) out.push_back(std::move(t));
        std::sort(out.begin(), out.end(),
                  [&](const Term& a, const Term& b) { return p.monomial_cmp(a.mono, b.mono) > 0; });
        return out;
    }
};

}  // namespace

Polynomial RingPresentation::normalize(Polynomial poly, int max_steps) const {
    // canonical merge first
    {
        PolyBuilder b{*this, {}};
        for (auto& t : poly) b.add(t.coeff, t.mono);
        poly = b.finish();
    }
    int steps = 0;
    for (;;) {
        int hit_term = -1, hit_rule = -1;
        for (size_t ti = 0; ti < poly.size() && hit_term < 0; ++ti) {
            const Term& t = poly[ti];
            for (size_t ri = 0; ri < relations.size(); ++ri) {
                const RewriteRule& r = relations[ri];
                if (!divides(r.lhs, t.mono)) continue;
                if (r.lhs_coeff > 1 && t.coeff >= 0 && t.coeff < r.lhs_coeff) continue;
                hit_term = static_cast<int>(ti);
                hit_rule = static_cast<int>(ri);
                break;
            }
        }
        if (hit_term < 0) return poly;
        if (++steps > max_steps) throw NonTerminating("rewrite bound exceeded");

        const Term t = poly[static_cast<size_t>(hit_term)];
        const RewriteRule& r = relations[static_cast<size_t>(hit_rule)];
        mpz_class q, rem;
        if (r.lhs_coeff == 1) {
            q = t.coeff;
            rem = 0;
        } else {
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.coeff.get_mpz_t(),
                        r.lhs_coeff.get_mpz_t());
        }
        Exponents cofactor = quotient(t.mono, r.lhs);
        PolyBuilder b{*this, {}};
        for (size_t ti = 0; ti < poly.size(); ++ti)
            if (static_cast<int>(ti) != hit_term) b.add(poly[ti].coeff, poly[ti].mono);
        b.add(rem, t.mono);
        for (const Term& rt : r.rhs) b.add(q * rt.coeff, mono_mul(cofactor, rt.mono));
        poly = b.finish();
    }
}

Polynomial RingPresentation::normalize_term(const mpz_class& coeff, const Exponents& mono,
                                            int max_steps) const {
    return normalize({{coeff, mono}}, max_steps);
}

mpz_class RingPresentation::monomial_order(const Exponents& m) const {
    mpz_class best = 0;
    for (const RewriteRule& r : relations) {
        if (r.lhs_coeff > 1 && r.rhs.empty() && divides(r.lhs, m))
            if (best == 0 || r.lhs_coeff < best) best = r.lhs_coeff;
    }
    for (int g = 0; g < num_generators(); ++g) {
        const mpz_class& o = generators[static_cast<size_t>(g)].coefficient_order;
        if (m[static_cast<size_t>(g)] != 0 && o != 0)
            if (best == 0 || o < best) best = o;
    }
    return best;
}

std::string RingPresentation::format_monomial(const Exponents& m) const {
    std::ostringstream os;
    bool first = true;
    for (int g = 0; g < num_generators(); ++g) {
        int e = m[static_cast<size_t>(g)];
        if (e == 0) continue;
        if (!first) os << "*";
        os << generators[static_cast<size_t>(g)].name;
        if (e != 1) os << "^" << e;
        first = false;
    }
    if (first) return "1";
    return os.str();
}

std::string RingPresentation::format_polynomial(const Polynomial& p) const {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : p) {
        mpz_class a = abs(t.coeff);
        if (first) {
            if (t.coeff < 0) os << "-";
        } else {
            os << (t.coeff < 0 ? "-" : "+");
        }
        std::string m = format_monomial(t.mono);
        if (a != 1)
            os << a << (m == "1" ? "" : "*" + m);
        else
            os << m;
        first = false;
    }
    return os.str();
}

Polynomial RingPresentation::parse_polynomial(const std::string& text) const {
    PolyBuilder b{*this, {}};
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
            ++i;
    };
    auto parse_int = [&]() -> mpz_class {
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw std::invalid_argument("expected integer at position " + std::to_string(start) +
                                        " in \"" + text + "\"");
        return mpz_class(text.substr(start, i - start));
    };
    skip();
    bool any = false;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (any) {
            throw std::invalid_argument("expected '+' or '-' at position " + std::to_string(i) +
                                        " in \"" + text + "\"");
        }
        mpz_class coeff = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) coeff = parse_int();
        Exponents m = unit();
        bool any_factor = false;
        for (;;) {
            skip();
            if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) break;
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string name = text.substr(start, i - start);
            int g = gen_index(name);
            if (g < 0) throw std::invalid_argument("unknown generator \"" + name + "\"");
            long e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = mpz_class(parse_int()).get_si();
            }
            m[static_cast<size_t>(g)] += static_cast<int>(e);
            any_factor = true;
        }
        if (!any_factor) {
            // bare integer term (e.g. "0", "2"); "0" contributes nothing
            if (coeff == 0 && !any) {
                skip();
                if (i < text.size())
                    throw std::invalid_argument("trailing input after 0 in \"" + text + "\"");
                return {};
            }
        }
        if (!monomial_valid(m))
            throw std::invalid_argument("negative exponent on non-invertible generator in \"" +
                                        text + "\"");
        b.add(sign * coeff, m);
        any = true;
        skip();
    }
    if (!any) throw std::invalid_argument("empty polynomial \"" + text + "\"");
    return b.finish();
}

Polynomial RingPresentation::add(const Polynomial& a, const Polynomial& b) const {
    Polynomial p = a;
    p.insert(p.end(), b.begin(), b.end());
    return normalize(std::move(p));
}

Polynomial RingPresentation::scale(const mpz_class& c, const Polynomial& a) const {
    Polynomial p = a;
    for (auto& t : p) t.coeff *= c;
    return normalize(std::move(p));
}

Polynomial RingPresentation::multiply(const Polynomial& a, const Polynomial& b) const {
    Polynomial p;
    for (const Term& x : a)
        for (const Term& y : b) p.push_back({x.coeff * y.coeff, mono_mul(x.mono, y.mono)});
    return normalize(std::move(p));
}

Polynomial RingPresentation::multiply_monomial(const Exponents& m, const Polynomial& a) const {
    Polynomial p = a;
    for (auto& t : p) t.mono = mono_mul(t.mono, m);
    return normalize(std::move(p));
}

std::vector<std::string> RingPresentation::validate() const {
    std::vector<std::string> out;
    std::set<std::string> names;
    for (const auto& g : generators) {
        if (!names.insert(g.name).second) out.push_back("duplicate generator name " + g.name);
        if (g.coefficient_order < 0) out.push_back("negative coefficient order on " + g.name);
    }
    if (!invertible.empty() && invertible.size() != generators.size())
        out.push_back("invertible flags do not match generator count");
    for (size_t ri = 0; ri < relations.size(); ++ri) {
        const RewriteRule& r = relations[ri];
        std::string where = "relation " + std::to_string(ri);
        if (static_cast<int>(r.lhs.size()) != num_generators()) {
            out.push_back(where + ": lhs exponent count mismatch");
            continue;
        }
        if (r.lhs_coeff < 1) out.push_back(where + ": lhs coefficient must be >= 1");
        for (int e : r.lhs)
            if (e < 0) out.push_back(where + ": negative exponent in lhs");
        Degree dl = monomial_degree(r.lhs);
        for (const Term& t : r.rhs) {
            if (static_cast<int>(t.mono.size()) != num_generators()) {
                out.push_back(where + ": rhs exponent count mismatch");
                continue;
            }
            if (!monomial_valid(t.mono)) out.push_back(where + ": invalid rhs monomial");
            if (!(monomial_degree(t.mono) == dl))
                out.push_back(where + ": rhs monomial degree differs from lhs");
            if (monomial_cmp(t.mono, r.lhs) >= 0)
                out.push_back(where + ": rhs monomial not smaller than lhs (bad orientation)");
        }
    }
    return out;
}

bool RingPresentation::signs_unambiguous() const {
    for (int i = 0; i < num_generators(); ++i) {
        if (generators[static_cast<size_t>(i)].degree.stem() % 2 == 0) continue;
        for (int j = i; j < num_generators(); ++j) {
            if (generators[static_cast<size_t>(j)].degree.stem() % 2 == 0) continue;
            Exponents m = unit();
            m[static_cast<size_t>(i)] += 1;
            m[static_cast<size_t>(j)] += 1;
            Polynomial doubled = normalize_term(2, m);
            for (const Term& t : doubled) {
                mpz_class o = monomial_order(t.mono);
                if (o == 0 || t.coeff % o != 0) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// basis enumeration

namespace {

struct Constraint {
    int t;
    std::optional<int> s;
    std::optional<int> w;
};

int degree_component(const Degree& d, int dim) { return dim == 0 ? d.t : dim == 1 ? d.s : d.w; }

// Enumerates normal-form monomials matching the constraint, all exponents
// capped at |e| <= cap. Exponents of a maximal independent generator subset
// are solved from the linear degree equations (Cramer), the rest searched.
// Throws WindowExceeded when a matching normal-form monomial touches the cap,
// since completeness can then not be certified.
std::vector<Exponents> enumerate_monomials(const RingPresentation& p, const Constraint& c,
                                           int cap) {
    const int n = p.num_generators();
    std::vector<int> dims = {0};
    if (c.s) dims.push_back(1);
    if (c.w) dims.push_back(2);

    // greedy maximal independent subset, preferring late-declared generators
    std::vector<int> solved;                  // generator indices, |solved| = rank
    std::vector<std::vector<mpz_class>> rowspace;  // accumulated rows for rank test
    auto try_add = [&](int g) {
        std::vector<mpz_class> col;
        for (int d : dims)
            col.emplace_back(degree_component(p.generators[static_cast<size_t>(g)].degree, d));
        // rank test by fraction-free elimination against rowspace
        std::vector<std::vector<mpz_class>> rows = rowspace;
        rows.push_back(col);
        size_t r = 0;
        for (size_t cdim = 0; cdim < dims.size() && r < rows.size(); ++cdim) {
            size_t piv = r;
            while (piv < rows.size() && rows[piv][cdim] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[r], rows[piv]);
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][cdim] == 0) continue;
                mpz_class f = rows[i][cdim], g2 = rows[r][cdim];
                for (size_t j = 0; j < dims.size(); ++j)
                    rows[i][j] = rows[i][j] * g2 - rows[r][j] * f;
            }
            ++r;
        }
        if (r == rows.size()) {
            rowspace.push_back(col);
            return true;
        }
        return false;
    };
    for (int g = n - 1; g >= 0; --g)
        if (try_add(g)) solved.push_back(g);
    std::vector<int> searched;
    for (int g = 0; g < n; ++g)
        if (std::find(solved.begin(), solved.end(), g) == solved.end()) searched.push_back(g);

    // pivot dims: rows of the solved-generator degree matrix forming an
    // invertible square block
    const int rank = static_cast<int>(solved.size());
    std::vector<int> pivot_dims;
    {
        std::vector<std::vector<mpz_class>> rows;
        for (size_t di = 0; di < dims.size(); ++di) {
            std::vector<mpz_class> row;
            for (int g : solved)
                row.emplace_back(
                    degree_component(p.generators[static_cast<size_t>(g)].degree, dims[di]));
            // accept the row if it increases rank
            std::vector<std::vector<mpz_class>> test = rows;
            test.push_back(row);
            size_t r = 0;
            for (int cc = 0; cc < rank && r < test.size(); ++cc) {
                size_t piv = r;
                while (piv < test.size() && test[piv][static_cast<size_t>(cc)] == 0) ++piv;
                if (piv == test.size()) continue;
                std::swap(test[r], test[piv]);
                for (size_t i = r + 1; i < test.size(); ++i) {
                    if (test[i][static_cast<size_t>(cc)] == 0) continue;
                    mpz_class f = test[i][static_cast<size_t>(cc)], g2 = test[r][static_cast<size_t>(cc)];
                    for (int j = 0; j < rank; ++j)
                        test[i][static_cast<size_t>(j)] =
                            test[i][static_cast<size_t>(j)] * g2 - test[r][static_cast<size_t>(j)] * f;
                }
                ++r;
            }
            if (r == test.size()) {
                rows = test;  // store eliminated form; only count matters
                pivot_dims.push_back(dims[di]);
            }
            if (static_cast<int>(pivot_dims.size()) == rank) break;
        }
    }

    IntMatrix square(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            square.at(i, j) = degree_component(
                p.generators[static_cast<size_t>(solved[static_cast<size_t>(j)])].degree,
                pivot_dims[static_cast<size_t>(i)]);
    mpz_class det = determinant(square);

    auto target_component = [&](int dim) -> int {
        return dim == 0 ? c.t : dim == 1 ? *c.s : *c.w;
    };

    std::vector<Exponents> results;
    bool touched = false;
    Exponents m = p.unit();

    auto leaf = [&]() {
        // solve square * x = target - contribution(searched part)
        std::vector<mpz_class> rhs(static_cast<size_t>(rank));
        Degree partial = p.monomial_degree(m);
        for (int i = 0; i < rank; ++i)
            rhs[static_cast<size_t>(i)] =
                target_component(pivot_dims[static_cast<size_t>(i)]) -
                degree_component(partial, pivot_dims[static_cast<size_t>(i)]);
        Exponents full = m;
        for (int j = 0; j < rank; ++j) {
            // Cramer
            IntMatrix mj = square;
            for (int i = 0; i < rank; ++i) mj.at(i, j) = rhs[static_cast<size_t>(i)];
            mpz_class num = determinant(mj);
            if (det == 0 || num % det != 0) return;
            mpz_class e = num / det;
            if (e < -cap || e > cap) return;
            full[static_cast<size_t>(solved[static_cast<size_t>(j)])] = static_cast<int>(e.get_si());
        }
        if (!p.monomial_valid(full)) return;
        Degree d = p.monomial_degree(full);
        if (d.t != c.t) return;
        if (c.s && d.s != *c.s) return;
        if (c.w && d.w != *c.w) return;
        for (const RewriteRule& r : p.relations)
            if (r.lhs_coeff == 1 && divides(r.lhs, full)) return;  // not normal form
        for (int g = 0; g < n; ++g)
            if (std::abs(full[static_cast<size_t>(g)]) >= cap) touched = true;
        results.push_back(full);
    };

    // DFS over searched generators
    auto dfs = [&](auto&& self, size_t level) -> void {
        if (level == searched.size()) {
            leaf();
            return;
        }
        int g = searched[level];
        int lo = p.is_invertible(g) ? -cap : 0;
        for (int e = lo; e <= cap; ++e) {
            m[static_cast<size_t>(g)] = e;
            self(self, level + 1);
        }
        m[static_cast<size_t>(g)] = 0;
    };
    dfs(dfs, 0);

    if (touched)
        throw WindowExceeded("basis enumeration reached the exponent cap; window too small or "
                             "grading does not bound exponents");
    return results;
}

int window_cap(const DegreeWindow& w, std::optional<int> weight) {
    int e = std::abs(w.t_min) + std::abs(w.t_max) + std::abs(w.s_min) + std::abs(w.s_max);
    if (weight) e += std::abs(*weight);
    return 2 * e + 8;
}

}  // namespace

std::vector<BasisElement> basis_in_bidegree(const RingPresentation& p, int t, int s,
                                            const DegreeWindow& window, std::optional<int> weight) {
    Constraint c{t, s, weight};
    std::vector<Exponents> monos = enumerate_monomials(p, c, window_cap(window, weight));
    std::vector<BasisElement> out;
    for (auto& m : monos) {
        mpz_class o = p.monomial_order(m);
        out.push_back({m, o, p.format_monomial(m)});
    }
    std::sort(out.begin(), out.end(), [&](const BasisElement& a, const BasisElement& b) {
        bool fa = a.order == 0, fb = b.order == 0;
        if (fa != fb) return fa;  // free summands first
        if (a.order != b.order) return a.order < b.order;
        return p.monomial_cmp(a.mono, b.mono) > 0;
    });
    return out;
}

FgAbGroup basis_group(const RingPresentation& p, const std::vector<BasisElement>& basis,
                      bool pro2) {
    (void)p;
    FgAbGroup g;
    g.pro2 = pro2;
    for (const auto& b : basis) {
        if (b.order == 0)
            ++g.free_rank;
        else
            g.torsion.push_back(b.order);
        g.generator_names.push_back(b.name);
    }
    g.check_invariants();
    return g;
}

std::vector<std::pair<int, FgAbGroup>> weight_zero_line(const RingPresentation& p, int t_min,
                                                        int t_max) {
    if (!p.has_weights) throw std::invalid_argument("weight_zero_line needs a weighted presentation");
    DegreeWindow w{t_min, t_max, 0, 0};
    std::vector<std::pair<int, FgAbGroup>> out;
    for (int t = t_min; t <= t_max; ++t) {
        Constraint c{t, std::nullopt, 0};
        std::vector<Exponents> monos = enumerate_monomials(p, c, window_cap(w, 0));
        std::vector<BasisElement> basis;
        for (auto& m : monos) basis.push_back({m, p.monomial_order(m), p.format_monomial(m)});
        std::sort(basis.begin(), basis.end(), [&](const BasisElement& a, const BasisElement& b) {
            bool fa = a.order == 0, fb = b.order == 0;
            if (fa != fb) return fa;
            if (a.order != b.order) return a.order < b.order;
            return p.monomial_cmp(a.mono, b.mono) > 0;
        });
        out.emplace_back(t, basis_group(p, basis, true));
    }
    return out;
}

std::vector<std::string> confluence_violations(const RingPresentation& p, int exp_bound,
                                               int coeff_bound) {
    std::vector<std::string> out;
    const int n = p.num_generators();
    Exponents m = p.unit();

    auto check = [&]() {
        if (!p.monomial_valid(m)) return;
        for (mpz_class c = 1; c <= coeff_bound; ++c) {
            std::vector<size_t> applicable;
            for (size_t ri = 0; ri < p.relations.size(); ++ri) {
                const RewriteRule& r = p.relations[ri];
                if (!divides(r.lhs, m)) continue;
                if (r.lhs_coeff > 1 && c >= 0 && c < r.lhs_coeff) continue;
                applicable.push_back(ri);
            }
            if (applicable.size() < 2) continue;
            // apply rule ri first, then normalize fully; all results must agree
            std::optional<Polynomial> reference;
            for (size_t ri : applicable) {
                const RewriteRule& r = p.relations[ri];
                mpz_class q, rem;
                if (r.lhs_coeff == 1) {
                    q = c;
                    rem = 0;
                } else {
                    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(),
                                r.lhs_coeff.get_mpz_t());
                }
                Exponents cof = quotient(m, r.lhs);
                Polynomial once;
                if (rem != 0) once.push_back({rem, m});
                for (const Term& rt : r.rhs) once.push_back({q * rt.coeff, mono_mul(cof, rt.mono)});
                Polynomial nf = p.normalize(std::move(once));
                if (!reference) {
                    reference = nf;
                } else if (!(nf == *reference)) {
                    out.push_back("non-confluent at " + c.get_str() + "*" + p.format_monomial(m) +
                                  ": " + p.format_polynomial(*reference) + " vs " +
                                  p.format_polynomial(nf));
                }
            }
        }
    };
    auto dfs = [&](auto&& self, int g) -> void {
        if (g == n) {
            check();
            return;
        }
        int lo = p.is_invertible(g) ? -exp_bound : 0;
        for (int e = lo; e <= exp_bound; ++e) {
            m[static_cast<size_t>(g)] = e;
            self(self, g + 1);
        }
        m[static_cast<size_t>(g)] = 0;
    };
    dfs(dfs, 0);
    return out;
}

}  // namespace hfpss
