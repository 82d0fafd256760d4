#include "hfpss/abgroup.hpp"

#include <sstream>

namespace hfpss {

IntMatrix FgAbGroup::relation_matrix() const {
    IntMatrix r(static_cast<int>(torsion.size()), num_generators());
    for (size_t i = 0; i < torsion.size(); ++i)
        r.at(static_cast<int>(i), free_rank + static_cast<int>(i)) = torsion[i];
    return r;
}

void FgAbGroup::check_invariants() const {
    if (free_rank < 0) throw std::invalid_argument("FgAbGroup: negative free rank");
    for (size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < 2) throw std::invalid_argument("FgAbGroup: invariant factor < 2");
        if (i > 0 && torsion[i] % torsion[i - 1] != 0)
            throw std::invalid_argument("FgAbGroup: invariant factors not a divisibility chain");
    }
    if (static_cast<int>(generator_names.size()) != num_generators())
        throw std::invalid_argument("FgAbGroup: generator name count mismatch");
}

std::string FgAbGroup::describe() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < free_rank; ++i) {
        os << (first ? "" : " (+) ") << (pro2 ? "Z2" : "Z");
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " (+) ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

FgAbGroup FgAbGroup::free_group(int rank, std::vector<std::string> names, bool pro2) {
    FgAbGroup g;
    g.free_rank = rank;
    g.generator_names = std::move(names);
    g.pro2 = pro2;
    g.check_invariants();
    return g;
}

FgAbGroup FgAbGroup::cyclic(const mpz_class& order, std::string name, bool pro2) {
    FgAbGroup g;
    if (order == 0) {
        g.free_rank = 1;
    } else if (order == 1) {
        return g;
    } else {
        g.torsion.push_back(order);
    }
    g.generator_names.push_back(std::move(name));
    g.pro2 = pro2;
    g.check_invariants();
    return g;
}

std::string format_combination(const std::vector<mpz_class>& coeffs,
                               const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        mpz_class c = coeffs[i];
        if (first) {
            if (c == -1)
                os << "-";
            else if (c != 1)
                os << c;
        } else {
            os << (c > 0 ? "+" : "-");
            mpz_class a = abs(c);
            if (a != 1) os << a;
        }
        os << names[i];
        first = false;
    }
    if (first) return "0";
    return os.str();
}

namespace {

// Negate so the first nonzero coefficient is positive (a group automorphism).
void canonicalize_sign(std::vector<mpz_class>& v) {
    for (const auto& c : v) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& x : v) x = -x;
        return;
    }
}

struct CokernelResult {
    FgAbGroup group;  // names left empty
    std::vector<std::vector<mpz_class>> gen_exprs;  // per result generator, over the n inputs
};

// Z^n modulo the row lattice of `relations`.
CokernelResult cokernel(const IntMatrix& relations, int n) {
    IntMatrix rt = relations.transpose();  // n x m, columns are relations
    SnfResult s = smith_normal_form(rt);
    int rank = std::min(n, relations.rows);

    CokernelResult res;
    std::vector<std::pair<mpz_class, int>> torsion_ix;
    std::vector<int> free_ix;
    for (int i = 0; i < n; ++i) {
        mpz_class d = (i < rank) ? s.d.at(i, i) : mpz_class(0);
        if (d == 1) continue;
        if (d == 0)
            free_ix.push_back(i);
        else
            torsion_ix.emplace_back(d, i);
    }
    res.group.free_rank = static_cast<int>(free_ix.size());
    auto expr_of = [&](int i) {
        std::vector<mpz_class> e = s.u_inv.column(i);
        canonicalize_sign(e);
        return e;
    };
    for (int i : free_ix) res.gen_exprs.push_back(expr_of(i));
    for (const auto& [d, i] : torsion_ix) {
        res.group.torsion.push_back(d);
        res.gen_exprs.push_back(expr_of(i));
    }
    res.group.generator_names.assign(res.gen_exprs.size(), "");
    return res;
}

IntMatrix relation_columns(const FgAbGroup& g) {
    return g.relation_matrix().transpose();
}

// Membership in the relation lattice is a divisibility check: the lattice of
// a normalized group is diagonal (0 on free generators, d_i on torsion).
bool in_relation_lattice(const FgAbGroup& g, const std::vector<mpz_class>& v) {
    for (int i = 0; i < g.num_generators(); ++i) {
        mpz_class o = g.order_of_generator(i);
        if (o == 0 ? v[static_cast<size_t>(i)] != 0 : v[static_cast<size_t>(i)] % o != 0)
            return false;
    }
    return true;
}

}  // namespace

FgAbGroup group_from_presentation(const IntMatrix& relations,
                                  const std::vector<std::string>& gen_names) {
    int n = static_cast<int>(gen_names.size());
    if (relations.cols != n)
        throw std::invalid_argument("group_from_presentation: relation columns != generator count");
    CokernelResult ck = cokernel(relations, n);
    for (size_t i = 0; i < ck.gen_exprs.size(); ++i)
        ck.group.generator_names[i] = format_combination(ck.gen_exprs[i], gen_names);
    ck.group.check_invariants();
    return ck.group;
}

bool map_well_defined(const IntMatrix& f, const FgAbGroup& b, const FgAbGroup& c) {
    if (f.rows != c.num_generators() || f.cols != b.num_generators()) return false;
    for (int j = 0; j < b.num_generators(); ++j) {
        mpz_class o = b.order_of_generator(j);
        if (o == 0) continue;
        std::vector<mpz_class> img = f.column(j);
        for (auto& x : img) x *= o;
        if (!in_relation_lattice(c, img)) return false;
    }
    return true;
}

FgAbGroup subquotient(const IntMatrix& f, const FgAbGroup& b,
                      const IntMatrix& g, const FgAbGroup& c) {
    const int nb = b.num_generators();
    const int nc = c.num_generators();
    if (f.rows != nb) throw std::invalid_argument("subquotient: f does not land in B");
    if (g.cols != nb || g.rows != nc) throw std::invalid_argument("subquotient: g is not a map B -> C");
    if (!map_well_defined(g, b, c)) throw std::invalid_argument("subquotient: g not well defined on B");

    IntMatrix rel_c = relation_columns(c);

    // g o f must vanish in C
    IntMatrix gf = g * f;
    for (int j = 0; j < gf.cols; ++j)
        if (!in_relation_lattice(c, gf.column(j))) throw CompositionNonzero();

    // kernel of B -> C as a sublattice of Z^nb
    IntMatrix p;  // columns span ker(g) pulled back through the relations of C
    if (nc == 0) {
        p = IntMatrix::identity(nb);
    } else {
        IntMatrix w = kernel_basis(g.hconcat(rel_c));
        p = IntMatrix(nb, w.cols);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < w.cols; ++j) p.at(i, j) = w.at(i, j);
    }
    const int r = p.cols;

    // relations among the kernel generators: syzygies of p, plus im(f) and rel(B)
    std::vector<std::vector<mpz_class>> rel_rows;
    IntMatrix syz = kernel_basis(p);
    for (int j = 0; j < syz.cols; ++j) rel_rows.push_back(syz.column(j));
    IntMatrix sources = f.hconcat(relation_columns(b));
    SnfSolver psolve(p);
    for (int j = 0; j < sources.cols; ++j) {
        auto sol = psolve.solve(sources.column(j));
        if (!sol) throw std::logic_error("subquotient: image not contained in kernel lattice");
        rel_rows.push_back(*sol);
    }
    IntMatrix rel(static_cast<int>(rel_rows.size()), r);
    for (size_t i = 0; i < rel_rows.size(); ++i)
        for (int j = 0; j < r; ++j) rel.at(static_cast<int>(i), j) = rel_rows[i][j];

    CokernelResult ck = cokernel(rel, r);
    for (size_t i = 0; i < ck.gen_exprs.size(); ++i) {
        std::vector<mpz_class> in_b = p.apply(ck.gen_exprs[i]);
        canonicalize_sign(in_b);
        ck.group.generator_names[i] = format_combination(in_b, b.generator_names);
    }
    ck.group.pro2 = b.pro2;
    ck.group.check_invariants();
    return ck.group;
}

}  // namespace hfpss
