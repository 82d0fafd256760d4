#include "hfpss/picard.hpp"

#include <sstream>

namespace hfpss {

CoefficientFamily pic_coefficients(const PicInput& in) {
    CoefficientFamily f;
    if (!in.pic0.underlying.is_trivial()) f.modules[0] = in.pic0;
    if (!in.pic1.underlying.is_trivial()) f.modules[1] = in.pic1;
    for (const auto& [t, m] : in.endo.modules)
        if (t >= 1) f.modules[t + 1] = m;
    return f;
}

PageDifferential import_differentials(const SsResult& endo_run, int r, const Page& pic_page,
                                      int min_t) {
    PageDifferential out;
    out.r = r;
    auto it = endo_run.diffs.find(r);
    for (const auto& [key, cell] : pic_page.cells) {
        if (key.t < min_t) continue;
        int ts = key.s + r, tt = key.t + r - 1;
        if (!pic_page.in_padded(ts, tt)) continue;
        const DiffEntry* e = it == endo_run.diffs.end() ? nullptr : it->second.at(key.s, key.t - 1);
        if (e) {
            out.maps[key] = DiffEntry{e->map, Provenance::ImportedStable};
        } else if (!endo_run.has_flag(r, key.s, key.t - 1)) {
            // the endomorphism differential here is structurally zero
            const FgAbGroup& target = pic_page.at(ts, tt);
            out.maps[key] = DiffEntry{IntMatrix(target.num_generators(), cell.group.num_generators()),
                                      Provenance::ImportedStable};
        }
    }
    return out;
}

void upper_bound_stem0(const Page& e_inf, int& free_rank, mpz_class& torsion_order,
                       std::vector<std::pair<int, FgAbGroup>>& gr_list) {
    gr_list = stem_assoc_graded(e_inf, 0);
    free_rank = 0;
    torsion_order = 1;
    for (const auto& [s, g] : gr_list) {
        free_rank += g.free_rank;
        torsion_order *= g.torsion_order();
    }
}

BoundVerdict resolve(int free_rank_upper, const mpz_class& torsion_order_upper,
                     std::vector<std::pair<int, FgAbGroup>> gr_list, const FgAbGroup& lower) {
    BoundVerdict v;
    v.free_rank_upper = free_rank_upper;
    v.torsion_order_upper = torsion_order_upper;
    v.gr_list = std::move(gr_list);
    v.lower_bound = lower;
    std::ostringstream os;
    if (lower.free_rank != free_rank_upper) {
        os << "free rank: lower bound " << lower.free_rank << " vs upper bound "
           << free_rank_upper;
        v.reasons.push_back(os.str());
    }
    if (lower.torsion_order() != torsion_order_upper) {
        std::ostringstream os2;
        os2 << "torsion order: lower bound " << lower.torsion_order() << " vs upper bound "
            << torsion_order_upper;
        v.reasons.push_back(os2.str());
    }
    if (v.reasons.empty()) {
        v.conclusive = true;
        v.conclusion = lower;
    }
    return v;
}

PicardResult run_picard(const PicardInputs& in) {
    PicardResult res;
    res.endo = run_to_einfty(in.endo);

    // assemble the Picard E2: low rows from cohomology, t >= 2 shared with
    // the endomorphism pages so imported matrices act on matching bases
    Page pic;
    pic.r = 2;
    pic.window = in.endo.window;
    pic.pad = in.endo.pad;
    const Page& endo_e2 = res.endo.pages.front();
    for (int s = pic.s_lo(); s <= pic.s_hi(); ++s)
        for (int stem = pic.stem_lo(); stem <= pic.stem_hi(); ++stem) {
            int t = stem + s;
            if (t < 0) continue;
            if (t <= 1) {
                const C2Module& m = (t == 0) ? in.pic0 : in.pic1;
                if (m.underlying.is_trivial()) continue;
                FgAbGroup h = cohomology_periodic(m, s);
                if (!h.is_trivial()) pic.cells[{s, t}] = Cell{std::move(h), {}, false};
            } else if (const Cell* c = endo_e2.cell(s, t - 1)) {
                pic.cells[{s, t}] = *c;
            }
        }

    res.pages.push_back(pic);
    Page current = pic;
    for (int r = 2; r < in.endo.max_page; ++r) {
        int min_t = r + in.import_min_t_offset;
        PageDifferential d = import_differentials(res.endo, r, current, min_t);
        for (const auto& [key, cell] : current.cells) {
            if (d.at(key.s, key.t)) continue;  // imported (possibly zero)
            if (!current.in_report(key.s, key.t)) continue;
            if (permanent_suppressed(cell.group, in.permanent)) continue;
            if (current.at(key.s + r, key.t + r - 1).is_trivial()) continue;
            res.flags.push_back({r, key.s, key.t});
            res.tainted.insert(key);
            res.tainted.insert({key.s + r, key.t + r - 1});
        }
        res.diffs[r] = d;
        current = turn_page(current, d);
        res.pages.push_back(current);
    }

    int rank = 0;
    mpz_class torsion = 1;
    std::vector<std::pair<int, FgAbGroup>> gr;
    upper_bound_stem0(res.pages.back(), rank, torsion, gr);
    res.verdict = resolve(rank, torsion, std::move(gr), in.lower_bound);
    return res;
}

}  // namespace hfpss
