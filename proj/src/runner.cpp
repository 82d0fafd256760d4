#include "hfpss/runner.hpp"

#include <sstream>

namespace hfpss {

using nlohmann::ordered_json;

namespace {

ordered_json group_json(const FgAbGroup& g) {
    ordered_json j;
    j["group"] = g.describe();
    j["names"] = g.generator_names;
    return j;
}

ordered_json page_json(const Page& p) {
    ordered_json cells = ordered_json::array();
    for (const auto& [key, cell] : p.cells) {
        if (!p.in_report(key.s, key.t)) continue;
        ordered_json c;
        c["stem"] = key.t - key.s;
        c["s"] = key.s;
        c.update(group_json(cell.group));
        cells.push_back(std::move(c));
    }
    ordered_json j;
    j["page"] = p.r;
    j["cells"] = std::move(cells);
    return j;
}

ordered_json flags_json(const std::vector<UnknownSlot>& flags) {
    ordered_json a = ordered_json::array();
    for (const auto& f : flags)
        a.push_back({{"page", f.r}, {"stem", f.t - f.s}, {"s", f.s}, {"t", f.t}});
    return a;
}

ordered_json diffs_json(const std::map<int, PageDifferential>& diffs, const Page& ref) {
    ordered_json a = ordered_json::array();
    for (const auto& [r, d] : diffs)
        for (const auto& [key, entry] : d.maps) {
            if (entry.map.is_zero()) continue;
            if (!ref.in_report(key.s, key.t)) continue;
            ordered_json e;
            e["page"] = r;
            e["from"] = {{"stem", key.t - key.s}, {"s", key.s}};
            e["to"] = {{"stem", key.t - key.s - 1}, {"s", key.s + r}};
            e["provenance"] = provenance_name(entry.provenance);
            e["matrix"] = entry.map.to_string();
            a.push_back(std::move(e));
        }
    return a;
}

// associated graded of every report-window stem, with taint marks
ordered_json stems_json(const Page& e_inf, const std::set<CellKey>& tainted,
                        const std::vector<StemVerdict>& verdicts) {
    std::map<int, const StemVerdict*> by_stem;
    for (const auto& v : verdicts) by_stem[v.stem] = &v;
    ordered_json a = ordered_json::array();
    for (int stem = e_inf.window.stem_min; stem <= e_inf.window.stem_max; ++stem) {
        auto gr = stem_assoc_graded(e_inf, stem);
        if (gr.empty() && !by_stem.count(stem)) continue;
        ordered_json e;
        e["stem"] = stem;
        ordered_json pieces = ordered_json::array();
        for (const auto& [s, g] : gr) {
            ordered_json p;
            p["s"] = s;
            p.update(group_json(g));
            if (tainted.count({s, stem + s})) p["tainted"] = true;
            pieces.push_back(std::move(p));
        }
        e["graded"] = std::move(pieces);
        if (auto it = by_stem.find(stem); it != by_stem.end()) {
            e["match"] = it->second->match;
            e["detail"] = it->second->detail;
        }
        a.push_back(std::move(e));
    }
    return a;
}

ordered_json solved_json(const std::map<int, GenDiffs>& solved, const RingPresentation& ring) {
    ordered_json j = ordered_json::object();
    for (const auto& [r, gd] : solved) {
        ordered_json page = ordered_json::object();
        for (const auto& [name, poly] : gd) page[name] = ring.format_polynomial(poly);
        j["d" + std::to_string(r)] = std::move(page);
    }
    return j;
}

SsInputs endo_inputs(const Scenario& sc, const RingPresentation* ring) {
    SsInputs in;
    in.window = sc.window;
    in.max_page = sc.max_page;
    int t_lo = sc.window.stem_min - in.pad - 1;
    int t_hi = sc.window.stem_max + in.pad + sc.window.filtration_max + in.pad + 1;
    in.family = sc.coefficients.expand(t_lo, t_hi);
    if (ring) {
        in.ring = *ring;
        for (const auto& d : sc.differentials)
            in.seeds[d.page][d.source] = ring->parse_polynomial(d.target);
    }
    in.permanent = std::set<std::string>(sc.permanent.begin(), sc.permanent.end());
    return in;
}

std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>> graded_by_stem(
    const Page& e_inf) {
    std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>> out;
    for (int stem = e_inf.window.stem_min; stem <= e_inf.window.stem_max; ++stem)
        out.push_back({stem, stem_assoc_graded(e_inf, stem)});
    return out;
}

}  // namespace

RunOutcome run_scenario(const Scenario& sc) {
    if (auto problems = validate(sc); !problems.empty()) {
        std::string msg = "scenario \"" + sc.name + "\" invalid:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw std::runtime_error(msg);
    }

    RunOutcome out;
    out.scenario = sc;
    std::optional<RingPresentation> ring;
    if (sc.presentation) ring = sc.presentation->build();

    ordered_json& rep = out.report;
    rep["name"] = sc.name;
    rep["mode"] = mode_name(sc.mode);
    rep["window"] = {{"stem_min", sc.window.stem_min},
                     {"stem_max", sc.window.stem_max},
                     {"filtration_max", sc.window.filtration_max}};

    if (sc.mode == Mode::WeightZero) {
        out.weight_line = weight_zero_line(*ring, sc.window.stem_min, sc.window.stem_max);
        ordered_json line = ordered_json::array();
        std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>> gr;
        for (const auto& [t, g] : out.weight_line) {
            ordered_json e;
            e["t"] = t;
            e.update(group_json(g));
            line.push_back(std::move(e));
            gr.push_back({t, {{0, g}}});
        }
        rep["weight_zero_line"] = std::move(line);
        out.verdicts = check_abutment(gr, sc.expected_abutment);
        ordered_json vj = ordered_json::array();
        bool all = true;
        for (const auto& v : out.verdicts) {
            vj.push_back({{"t", v.stem}, {"match", v.match}, {"detail", v.detail}});
            all = all && v.match;
        }
        rep["expected"] = std::move(vj);
        out.exit_code = all ? 0 : 2;
        return out;
    }

    if (sc.mode == Mode::Endomorphism) {
        out.endo = run_to_einfty(endo_inputs(sc, ring ? &*ring : nullptr));
        const SsResult& res = *out.endo;
        if (res.match) {
            rep["presentation_match"] = {{"all_match", res.match->all_match},
                                         {"mismatches", res.match->mismatches},
                                         {"notes", res.match->notes}};
        }
        if (ring) rep["solved_differentials"] = solved_json(res.solved, *ring);
        rep["pages"] = ordered_json::array();
        for (const auto& p : res.pages) rep["pages"].push_back(page_json(p));
        rep["differentials"] = diffs_json(res.diffs, res.final_page());
        rep["unknown_slots"] = flags_json(res.flags);
        out.verdicts = check_abutment(graded_by_stem(res.final_page()), sc.expected_abutment);
        rep["stems"] = stems_json(res.final_page(), res.tainted, out.verdicts);
        bool all = res.match ? res.match->all_match : true;
        for (const auto& v : out.verdicts) all = all && v.match;
        out.exit_code = all ? 0 : 2;
        return out;
    }

    // Picard
    PicardInputs pin;
    pin.endo = endo_inputs(sc, ring ? &*ring : nullptr);
    pin.pic0 = sc.pic0->build();
    pin.pic1 = sc.pic1->build();
    pin.import_min_t_offset = sc.import_min_t_offset;
    pin.lower_bound = *sc.lower_bound;
    pin.permanent = pin.endo.permanent;
    out.picard = run_picard(pin);
    const PicardResult& res = *out.picard;

    if (res.endo.match)
        rep["presentation_match"] = {{"all_match", res.endo.match->all_match},
                                     {"mismatches", res.endo.match->mismatches},
                                     {"notes", res.endo.match->notes}};
    if (ring) rep["solved_differentials"] = solved_json(res.endo.solved, *ring);
    rep["endo_unknown_slots"] = flags_json(res.endo.flags);
    rep["pages"] = ordered_json::array();
    for (const auto& p : res.pages) rep["pages"].push_back(page_json(p));
    rep["differentials"] = diffs_json(res.diffs, res.final_page());
    rep["unknown_slots"] = flags_json(res.flags);
    out.verdicts = check_abutment(graded_by_stem(res.final_page()), sc.expected_abutment);
    rep["stems"] = stems_json(res.final_page(), res.tainted, out.verdicts);

    const BoundVerdict& v = res.verdict;
    ordered_json gr = ordered_json::array();
    for (const auto& [s, g] : v.gr_list) {
        ordered_json e;
        e["s"] = s;
        e.update(group_json(g));
        if (res.tainted.count({s, s})) e["tainted"] = true;
        gr.push_back(std::move(e));
    }
    rep["verdict"] = {{"stem0_graded", std::move(gr)},
                      {"free_rank_upper", v.free_rank_upper},
                      {"torsion_order_upper", static_cast<long>(v.torsion_order_upper.get_si())},
                      {"lower_bound", v.lower_bound.describe()},
                      {"conclusive", v.conclusive},
                      {"conclusion", v.conclusive ? v.conclusion.describe() : std::string()},
                      {"reasons", v.reasons}};
    bool endo_ok = res.endo.match ? res.endo.match->all_match : true;
    for (const auto& sv : out.verdicts) endo_ok = endo_ok && sv.match;
    out.exit_code = (v.conclusive && endo_ok) ? 0 : 2;
    return out;
}

ChartInput chart_input(const RunOutcome& out, int page) {
    const std::vector<Page>* pages = nullptr;
    const std::map<int, PageDifferential>* diffs = nullptr;
    const std::vector<UnknownSlot>* flags = nullptr;
    if (out.picard) {
        pages = &out.picard->pages;
        diffs = &out.picard->diffs;
        flags = &out.picard->flags;
    } else if (out.endo) {
        pages = &out.endo->pages;
        diffs = &out.endo->diffs;
        flags = &out.endo->flags;
    } else {
        throw std::out_of_range("this scenario mode has no chartable pages");
    }
    if (page < 2) page = pages->back().r;
    int idx = page - 2;
    if (idx < 0 || idx >= static_cast<int>(pages->size()))
        throw std::out_of_range("page " + std::to_string(page) + " was not computed");
    ChartInput in;
    in.page = &(*pages)[static_cast<size_t>(idx)];
    if (auto it = diffs->find(page); it != diffs->end()) in.diff = &it->second;
    for (const auto& u : *flags)
        if (u.r == page) in.unknowns.push_back(u);
    in.title = out.scenario.name;
    return in;
}

}  // namespace hfpss
