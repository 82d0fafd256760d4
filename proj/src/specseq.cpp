#include "hfpss/specseq.hpp"

#include <algorithm>
#include <sstream>

namespace hfpss {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Seeded: return "seeded";
        case Provenance::Leibniz: return "leibniz";
        case Provenance::ImportedStable: return "imported-stable";
        case Provenance::AssumedZeroUnknown: return "assumed-zero-unknown";
    }
    return "?";
}

const C2Module& CoefficientFamily::at(int t) const {
    static const C2Module zero = C2Module::zero();
    auto it = modules.find(t);
    return it == modules.end() ? zero : it->second;
}

const Cell* Page::cell(int s, int t) const {
    auto it = cells.find({s, t});
    return it == cells.end() ? nullptr : &it->second;
}

const FgAbGroup& Page::at(int s, int t) const {
    static const FgAbGroup trivial;
    const Cell* c = cell(s, t);
    return c ? c->group : trivial;
}

const DiffEntry* PageDifferential::at(int s, int t) const {
    auto it = maps.find({s, t});
    return it == maps.end() ? nullptr : &it->second;
}

bool PageDifferential::is_zero() const {
    for (const auto& [k, e] : maps)
        if (!e.map.is_zero()) return false;
    return true;
}

Page build_e2(const CoefficientFamily& family, const Window& window, int pad) {
    Page p;
    p.r = 2;
    p.window = window;
    p.pad = pad;
    for (int s = p.s_lo(); s <= p.s_hi(); ++s)
        for (int stem = p.stem_lo(); stem <= p.stem_hi(); ++stem) {
            int t = stem + s;
            const C2Module& m = family.at(t);
            if (m.underlying.is_trivial()) continue;
            FgAbGroup h = cohomology_periodic(m, s);
            if (!h.is_trivial()) p.cells[{s, t}] = Cell{std::move(h), {}, false};
        }
    return p;
}

namespace {

DegreeWindow ring_degree_window(const Page& p) {
    return DegreeWindow{p.stem_lo(), p.stem_hi() + p.s_hi(), p.s_lo(), p.s_hi()};
}

}  // namespace

Page build_e2_from_ring(const RingPresentation& ring, const Window& window, int pad, bool pro2) {
    Page p;
    p.r = 2;
    p.window = window;
    p.pad = pad;
    DegreeWindow dw = ring_degree_window(p);
    for (int s = p.s_lo(); s <= p.s_hi(); ++s)
        for (int stem = p.stem_lo(); stem <= p.stem_hi(); ++stem) {
            int t = stem + s;
            std::vector<BasisElement> basis = basis_in_bidegree(ring, t, s, dw);
            if (basis.empty()) continue;
            FgAbGroup g = basis_group(ring, basis, pro2);
            p.cells[{s, t}] = Cell{std::move(g), std::move(basis), true};
        }
    return p;
}

MatchReport match_presentation(const Page& cohomology_page, const RingPresentation& ring,
                               const Window& window) {
    MatchReport rep;
    DegreeWindow dw = ring_degree_window(cohomology_page);
    for (int s = 0; s <= window.filtration_max; ++s)
        for (int stem = window.stem_min; stem <= window.stem_max; ++stem) {
            int t = stem + s;
            std::vector<BasisElement> basis = basis_in_bidegree(ring, t, s, dw);
            FgAbGroup from_ring = basis_group(ring, basis, cohomology_page.at(s, t).pro2);
            const FgAbGroup& from_cohomology = cohomology_page.at(s, t);
            if (!from_ring.same_invariants(from_cohomology)) {
                std::ostringstream os;
                os << "(s,t)=(" << s << "," << t << "): cohomology " << from_cohomology.describe()
                   << " vs presentation " << from_ring.describe();
                rep.mismatches.push_back(os.str());
            }
        }
    rep.all_match = rep.mismatches.empty();
    // generator orders not exhibited by any coefficient rule
    for (int g = 0; g < ring.num_generators(); ++g) {
        const RingGenerator& gen = ring.generators[static_cast<size_t>(g)];
        if (gen.coefficient_order == 0) continue;
        Exponents m = ring.unit();
        m[static_cast<size_t>(g)] = 1;
        bool derivable = false;
        for (const RewriteRule& rule : ring.relations) {
            if (rule.lhs_coeff <= 1 || !rule.rhs.empty()) continue;
            bool div = true;
            for (size_t i = 0; i < m.size(); ++i)
                if (rule.lhs[i] > m[i]) div = false;
            if (div) derivable = true;
        }
        if (!derivable)
            rep.notes.push_back("order " + gen.coefficient_order.get_str() + " of generator " +
                                gen.name +
                                " is taken from the coefficient groups; the listed relations do "
                                "not imply it");
    }
    return rep;
}

namespace {

// d of a single monomial under the Leibniz rule; factors in declaration
// order, Koszul sign by stem parity.
Polynomial d_monomial(const RingPresentation& ring, const std::vector<Polynomial>& gen_d,
                      const Exponents& m) {
    Polynomial out;
    int prefix_parity = 0;
    for (int g = 0; g < ring.num_generators(); ++g) {
        int e = m[static_cast<size_t>(g)];
        int stem = ring.generators[static_cast<size_t>(g)].degree.stem();
        if (e != 0 && !gen_d[static_cast<size_t>(g)].empty()) {
            // sum_{k<e} (-1)^{k*stem}
            mpz_class factor;
            if (stem % 2 == 0) {
                factor = e;
            } else {
                if (e < 0)
                    throw LeibnizInconsistent("negative exponent on odd-stem generator " +
                                              ring.generators[static_cast<size_t>(g)].name);
                factor = e % 2;
            }
            if (prefix_parity) factor = -factor;
            if (factor != 0) {
                Exponents rest = m;
                rest[static_cast<size_t>(g)] -= 1;
                for (const Term& t : gen_d[static_cast<size_t>(g)])
                    out.push_back({factor * t.coeff, [&] {
                                       Exponents r = rest;
                                       for (size_t i = 0; i < r.size(); ++i) r[i] += t.mono[i];
                                       return r;
                                   }()});
            }
        }
        prefix_parity = (prefix_parity + e * stem) & 1;
    }
    return ring.normalize(std::move(out));
}

Polynomial d_polynomial(const RingPresentation& ring, const std::vector<Polynomial>& gen_d,
                        const Polynomial& p) {
    Polynomial out;
    for (const Term& t : p) {
        Polynomial dm = d_monomial(ring, gen_d, t.mono);
        for (const Term& u : dm) out.push_back({t.coeff * u.coeff, u.mono});
    }
    return ring.normalize(std::move(out));
}

// Does the polynomial vanish in the ring once generator orders are taken into
// account? (normalize leaves e.g. 2*z alone because no rewrite rule carries
// the order of z.)
bool vanishes(const RingPresentation& ring, const Polynomial& p) {
    for (const Term& t : p) {
        mpz_class o = ring.monomial_order(t.mono);
        if (o == 0 || t.coeff % o != 0) return false;
    }
    return true;
}

std::vector<Polynomial> index_gen_diffs(const RingPresentation& ring, const GenDiffs& d) {
    std::vector<Polynomial> v(static_cast<size_t>(ring.num_generators()));
    for (const auto& [name, poly] : d) {
        int g = ring.gen_index(name);
        if (g < 0) throw std::invalid_argument("unknown generator " + name);
        v[static_cast<size_t>(g)] = poly;
    }
    return v;
}

bool assignment_consistent(const RingPresentation& ring, const std::vector<Polynomial>& gen_d) {
    // order of each generator must kill its differential
    for (int g = 0; g < ring.num_generators(); ++g) {
        Exponents m = ring.unit();
        m[static_cast<size_t>(g)] = 1;
        mpz_class o = ring.monomial_order(m);
        if (o != 0 && !vanishes(ring, ring.scale(o, gen_d[static_cast<size_t>(g)]))) return false;
    }
    // d applied to both sides of every relation must agree
    for (const RewriteRule& rule : ring.relations) {
        Polynomial lhs_d = d_monomial(ring, gen_d, rule.lhs);
        for (auto& t : lhs_d) t.coeff *= rule.lhs_coeff;
        Polynomial rhs_d = d_polynomial(ring, gen_d, rule.rhs);
        for (auto& t : rhs_d) t.coeff = -t.coeff;
        Polynomial diff = ring.add(lhs_d, rhs_d);
        if (!vanishes(ring, diff)) return false;
    }
    return true;
}

}  // namespace

GenDiffs solve_generator_differentials(const RingPresentation& ring, const Page& page,
                                       const GenDiffs& seeds,
                                       const std::set<std::string>& permanent, int r) {
    DegreeWindow dw = ring_degree_window(page);
    std::vector<std::string> unknowns;
    GenDiffs fixed;
    for (const auto& g : ring.generators) {
        if (seeds.count(g.name)) {
            fixed[g.name] = ring.normalize(seeds.at(g.name));
        } else if (permanent.count(g.name)) {
            fixed[g.name] = {};
        } else {
            unknowns.push_back(g.name);
        }
    }

    // candidate targets per unknown generator
    std::vector<std::vector<Polynomial>> candidates;
    for (const std::string& name : unknowns) {
        int gi = ring.gen_index(name);
        const RingGenerator& gen = ring.generators[static_cast<size_t>(gi)];
        Exponents gm = ring.unit();
        gm[static_cast<size_t>(gi)] = 1;
        mpz_class src_order = ring.monomial_order(gm);
        Degree target = gen.degree + Degree{r - 1, r, 0};
        std::vector<BasisElement> basis =
            basis_in_bidegree(ring, target.t, target.s, dw,
                              ring.has_weights ? std::optional<int>(target.w) : std::nullopt);
        std::vector<Polynomial> cands = {Polynomial{}};
        for (const BasisElement& b : basis) {
            mpz_class reps;
            if (b.order != 0) {
                reps = b.order;
            } else if (src_order != 0) {
                reps = 1;  // torsion source cannot hit a free class: coefficient 0 only
            } else {
                throw AmbiguousAssignment("free generator " + name +
                                          " with free differential target " + b.name +
                                          ": coefficient range is unbounded");
            }
            std::vector<Polynomial> next;
            for (const Polynomial& base : cands)
                for (mpz_class c = 0; c < reps; ++c) {
                    Polynomial p = base;
                    if (c != 0) p.push_back({c, b.mono});
                    next.push_back(std::move(p));
                }
            cands = std::move(next);
            if (cands.size() > 4096)
                throw AmbiguousAssignment("candidate set for " + name + " is too large");
        }
        for (auto& p : cands) p = ring.normalize(std::move(p));
        candidates.push_back(std::move(cands));
    }

    std::vector<GenDiffs> solutions;
    std::vector<size_t> pick(unknowns.size(), 0);
    for (;;) {
        GenDiffs attempt = fixed;
        for (size_t i = 0; i < unknowns.size(); ++i)
            attempt[unknowns[i]] = candidates[i][pick[i]];
        if (assignment_consistent(ring, index_gen_diffs(ring, attempt))) {
            solutions.push_back(attempt);
            if (solutions.size() > 8) break;
        }
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
        if (unknowns.empty()) break;
    }
    if (solutions.empty())
        throw NoConsistentAssignment("no differential assignment on page " + std::to_string(r) +
                                     " is consistent with the relations");
    if (solutions.size() > 1) {
        std::vector<std::string> descr;
        for (const auto& sol : solutions) {
            std::ostringstream os;
            for (const auto& [n, p] : sol) os << "d(" << n << ")=" << ring.format_polynomial(p) << " ";
            descr.push_back(os.str());
        }
        throw AmbiguousAssignment("multiple consistent differential assignments on page " +
                                      std::to_string(r),
                                  descr);
    }
    return solutions.front();
}

PageDifferential propagate_leibniz(const RingPresentation& ring, const Page& page,
                                   const GenDiffs& diffs, int r,
                                   const std::set<std::string>& seeded_names) {
    std::vector<Polynomial> gen_d = index_gen_diffs(ring, diffs);
    for (int g = 0; g < ring.num_generators(); ++g) {
        Polynomial dd = d_polynomial(ring, gen_d, gen_d[static_cast<size_t>(g)]);
        if (!vanishes(ring, dd))
            throw LeibnizInconsistent("d(d(" + ring.generators[static_cast<size_t>(g)].name +
                                      ")) = " + ring.format_polynomial(dd) + " != 0");
    }

    PageDifferential out;
    out.r = r;
    for (const auto& [key, cell] : page.cells) {
        if (!cell.has_basis) continue;
        int ts = key.s + r, tt = key.t + r - 1;
        if (!page.in_padded(ts, tt)) continue;
        const Cell* target = page.cell(ts, tt);
        int trows = target ? target->group.num_generators() : 0;
        IntMatrix m(trows, cell.group.num_generators());
        bool seeded_here = false;
        for (int j = 0; j < cell.group.num_generators(); ++j) {
            const Exponents& mono = cell.basis[static_cast<size_t>(j)].mono;
            for (const std::string& sn : seeded_names) {
                int gi = ring.gen_index(sn);
                Exponents gm = ring.unit();
                if (gi >= 0) gm[static_cast<size_t>(gi)] = 1;
                if (mono == gm) seeded_here = true;
            }
            Polynomial d = d_monomial(ring, gen_d, mono);
            for (const Term& term : d) {
                int row = -1;
                if (target)
                    for (int i = 0; i < trows; ++i)
                        if (target->basis[static_cast<size_t>(i)].mono == term.mono) row = i;
                if (row < 0) {
                    // the image class is zero in the target group
                    mpz_class o = ring.monomial_order(term.mono);
                    if (o == 0 || term.coeff % o != 0)
                        throw LeibnizInconsistent(
                            "differential image " + ring.format_polynomial({term}) +
                            " missing from target basis at (s,t)=(" + std::to_string(ts) + "," +
                            std::to_string(tt) + ")");
                    continue;
                }
                m.at(row, j) += term.coeff;
            }
        }
        out.maps[key] = DiffEntry{std::move(m),
                                  seeded_here ? Provenance::Seeded : Provenance::Leibniz};
    }
    return out;
}

Page turn_page(const Page& page, const PageDifferential& d) {
    Page next;
    next.r = page.r + 1;
    next.window = page.window;
    next.pad = page.pad;
    for (const auto& [key, cell] : page.cells) {
        const DiffEntry* out_e = d.at(key.s, key.t);
        const DiffEntry* in_e = d.at(key.s - d.r, key.t - d.r + 1);
        bool out_zero = !out_e || out_e->map.is_zero();
        bool in_zero = !in_e || in_e->map.is_zero();
        if (out_zero && in_zero) {
            next.cells[key] = cell;
            continue;
        }
        int n = cell.group.num_generators();
        IntMatrix f = in_e ? in_e->map : IntMatrix(n, 0);
        const FgAbGroup& target = page.at(key.s + d.r, key.t + d.r - 1);
        IntMatrix g = out_e ? out_e->map : IntMatrix(target.num_generators(), n);
        FgAbGroup h = subquotient(f, cell.group, g, target);
        if (!h.is_trivial()) next.cells[key] = Cell{std::move(h), {}, false};
    }
    return next;
}

std::vector<std::pair<int, FgAbGroup>> stem_assoc_graded(const Page& e_inf, int n) {
    std::vector<std::pair<int, FgAbGroup>> out;
    for (int s = 0; s <= e_inf.window.filtration_max; ++s) {
        if (!e_inf.in_report(s, n + s)) continue;
        const FgAbGroup& g = e_inf.at(s, n + s);
        if (!g.is_trivial()) out.emplace_back(s, g);
    }
    return out;
}

std::vector<StemVerdict> check_abutment(
    const std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>>& gr_by_stem,
    const std::map<int, FgAbGroup>& expected) {
    std::vector<StemVerdict> out;
    for (const auto& [stem, gr] : gr_by_stem) {
        auto it = expected.find(stem);
        if (it == expected.end()) continue;
        const FgAbGroup& want = it->second;
        int rank = 0;
        mpz_class torsion = 1;
        bool exponents_ok = true;
        for (const auto& [s, g] : gr) {
            rank += g.free_rank;
            torsion *= g.torsion_order();
            for (const auto& d : g.torsion)
                if (want.exponent() % d != 0) exponents_ok = false;
        }
        StemVerdict v;
        v.stem = stem;
        std::ostringstream os;
        if (rank != want.free_rank) {
            os << "free rank " << rank << " != expected " << want.free_rank;
        } else if (torsion != want.torsion_order()) {
            os << "torsion order " << torsion << " != expected " << want.torsion_order();
        } else if (!exponents_ok) {
            os << "a graded piece's exponent exceeds the expected group's exponent";
        } else {
            v.match = true;
            os << "consistent with " << want.describe();
        }
        v.detail = os.str();
        out.push_back(v);
    }
    return out;
}

bool permanent_suppressed(const FgAbGroup& g, const std::set<std::string>& permanent) {
    if (g.is_trivial() || permanent.empty()) return false;
    for (const std::string& name : g.generator_names) {
        size_t i = 0;
        while (i < name.size() && (std::isdigit(static_cast<unsigned char>(name[i])) || name[i] == '-'))
            ++i;
        if (!permanent.count(name.substr(i))) return false;
    }
    return true;
}

bool SsResult::has_flag(int r, int s, int t) const {
    for (const auto& f : flags)
        if (f.r == r && f.s == s && f.t == t) return true;
    return false;
}

SsResult run_to_einfty(const SsInputs& in) {
    if (in.max_page < 2) throw std::invalid_argument("max_page must be >= 2");
    SsResult res;
    res.cohomology_e2 = build_e2(in.family, in.window, in.pad);

    Page current;
    bool ring_alive = false;
    if (in.ring) {
        current = build_e2_from_ring(*in.ring, in.window, in.pad);
        res.match = match_presentation(res.cohomology_e2, *in.ring, in.window);
        ring_alive = true;
    } else {
        current = res.cohomology_e2;
    }
    res.pages.push_back(current);

    for (int r = 2; r < in.max_page; ++r) {
        PageDifferential d;
        d.r = r;
        bool knowledge = false;
        if (ring_alive) {
            GenDiffs seeds = in.seeds.count(r) ? in.seeds.at(r) : GenDiffs{};
            GenDiffs solved = solve_generator_differentials(*in.ring, current, seeds,
                                                            in.permanent, r);
            std::set<std::string> seeded_names;
            for (const auto& [n, p] : seeds) seeded_names.insert(n);
            d = propagate_leibniz(*in.ring, current, solved, r, seeded_names);
            res.solved[r] = solved;
            knowledge = true;
            if (!d.is_zero()) ring_alive = false;  // monomial bases break on the next page
        } else if (in.seeds.count(r)) {
            throw std::invalid_argument(
                "seeded differentials on page " + std::to_string(r) +
                " follow a nonzero page; monomial bases are no longer available");
        }
        if (!knowledge) {
            for (const auto& [key, cell] : current.cells) {
                if (!current.in_report(key.s, key.t)) continue;
                if (permanent_suppressed(cell.group, in.permanent)) continue;
                if (current.at(key.s + r, key.t + r - 1).is_trivial()) continue;
                res.flags.push_back({r, key.s, key.t});
                res.tainted.insert(key);
                res.tainted.insert({key.s + r, key.t + r - 1});
            }
        }
        res.diffs[r] = d;
        current = turn_page(current, d);
        res.pages.push_back(current);
    }
    return res;
}

}  // namespace hfpss
