#include "hfpss/c2cohomology.hpp"

namespace hfpss {

namespace {

bool in_relation_lattice(const FgAbGroup& g, const std::vector<mpz_class>& v) {
    IntMatrix rel = g.relation_matrix().transpose();
    bool zero = true;
    for (const auto& x : v)
        if (x != 0) zero = false;
    if (zero) return true;
    return rel.cols > 0 && lattice_contains(rel, v);
}

void require_valid(const C2Module& m) {
    auto v = validate(m);
    if (!v.empty()) throw InvalidC2Module(v.front());
}

}  // namespace

std::vector<std::string> validate(const C2Module& m) {
    std::vector<std::string> out;
    int n = m.underlying.num_generators();
    try {
        m.underlying.check_invariants();
    } catch (const std::invalid_argument& e) {
        out.emplace_back(e.what());
        return out;
    }
    if (m.involution.rows != n || m.involution.cols != n) {
        out.push_back("involution matrix is " + std::to_string(m.involution.rows) + "x" +
                      std::to_string(m.involution.cols) + ", expected " + std::to_string(n) + "x" +
                      std::to_string(n));
        return out;
    }
    if (!map_well_defined(m.involution, m.underlying, m.underlying))
        out.push_back("involution does not respect generator orders");
    IntMatrix sq = m.involution * m.involution - IntMatrix::identity(n);
    for (int j = 0; j < n; ++j) {
        if (!in_relation_lattice(m.underlying, sq.column(j))) {
            out.push_back("sigma^2 != id on generator " +
                          (j < static_cast<int>(m.underlying.generator_names.size())
                               ? m.underlying.generator_names[j]
                               : std::to_string(j)));
            break;
        }
    }
    return out;
}

FgAbGroup cohomology_periodic(const C2Module& m, int s) {
    if (s < 0) throw std::invalid_argument("cohomology degree must be nonnegative");
    require_valid(m);
    int n = m.underlying.num_generators();
    IntMatrix one_minus = IntMatrix::identity(n) - m.involution;
    IntMatrix norm = IntMatrix::identity(n) + m.involution;
    if (s == 0) return subquotient(IntMatrix(n, 0), m.underlying, one_minus, m.underlying);
    if (s % 2 == 1) return subquotient(one_minus, m.underlying, norm, m.underlying);
    return subquotient(norm, m.underlying, one_minus, m.underlying);
}

namespace {

// Maps(C2^n, M) as a direct sum of 2^n copies of M, invariant factors kept in
// a valid chain by interleaving the copies.
struct BarLevel {
    FgAbGroup group;
    int copies;  // 2^n
    int fm, tm;  // free / torsion generator counts of M

    int index(int copy, int local) const {
        if (local < fm) return local * copies + copy;
        return copies * fm + (local - fm) * copies + copy;
    }
};

BarLevel bar_level(const FgAbGroup& m, int n) {
    BarLevel lv;
    lv.copies = 1 << n;
    lv.fm = m.free_rank;
    lv.tm = static_cast<int>(m.torsion.size());
    lv.group.free_rank = lv.fm * lv.copies;
    lv.group.pro2 = m.pro2;
    for (const auto& d : m.torsion)
        for (int t = 0; t < lv.copies; ++t) lv.group.torsion.push_back(d);
    lv.group.generator_names.resize(static_cast<size_t>(m.num_generators()) * lv.copies);
    for (int i = 0; i < m.num_generators(); ++i)
        for (int t = 0; t < lv.copies; ++t) {
            std::string tag;
            for (int k = 0; k < n; ++k) tag += ((t >> k) & 1) ? '1' : '0';
            lv.group.generator_names[static_cast<size_t>(lv.index(t, i))] =
                m.generator_names[static_cast<size_t>(i)] + "@" + (n ? tag : std::string("e"));
        }
    return lv;
}

// Inhomogeneous differential C^n -> C^{n+1}.
IntMatrix bar_differential(const C2Module& m, int n, const BarLevel& src, const BarLevel& dst) {
    int mm = m.underlying.num_generators();
    IntMatrix d(dst.copies * mm, src.copies * mm);
    IntMatrix id = IntMatrix::identity(mm);

    auto add_block = [&](int r_tuple, int s_tuple, const IntMatrix& blk, int sign) {
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j)
                if (blk.at(i, j) != 0)
                    d.at(dst.index(r_tuple, i), src.index(s_tuple, j)) += sign * blk.at(i, j);
    };

    int head_mask = (1 << n) - 1;
    for (int r = 0; r < dst.copies; ++r) {
        // g1 . phi(g2..g_{n+1})
        add_block(r, r >> 1, (r & 1) ? m.involution : id, 1);
        // (-1)^i phi(.., g_i g_{i+1}, ..)
        for (int i = 1; i <= n; ++i) {
            int low = r & ((1 << (i - 1)) - 1);
            int merged = ((r >> (i - 1)) ^ (r >> i)) & 1;
            int high = (r >> (i + 1)) << i;
            int s_tuple = low | (merged << (i - 1)) | high;
            add_block(r, s_tuple, id, (i % 2) ? -1 : 1);
        }
        // (-1)^{n+1} phi(g1..gn)
        add_block(r, r & head_mask, id, ((n + 1) % 2) ? -1 : 1);
    }
    return d;
}

}  // namespace

FgAbGroup cohomology_bar(const C2Module& m, int s, int limit) {
    if (s < 0) throw std::invalid_argument("cohomology degree must be nonnegative");
    if (s > limit) throw OracleLimitExceeded(s, limit);
    require_valid(m);

    BarLevel here = bar_level(m.underlying, s);
    BarLevel next = bar_level(m.underlying, s + 1);
    IntMatrix d_out = bar_differential(m, s, here, next);
    IntMatrix d_in(here.group.num_generators(), 0);
    if (s > 0) {
        BarLevel prev = bar_level(m.underlying, s - 1);
        d_in = bar_differential(m, s - 1, prev, here);
    }
    return subquotient(d_in, here.group, d_out, next.group);
}

}  // namespace hfpss
