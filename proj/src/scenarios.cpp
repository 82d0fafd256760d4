#include "hfpss/scenarios.hpp"

#include <fstream>
#include <sstream>

namespace hfpss {

using nlohmann::json;
using nlohmann::ordered_json;

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Endomorphism: return "endomorphism";
        case Mode::Picard: return "picard";
        case Mode::WeightZero: return "weight0";
    }
    return "?";
}

C2Module ModuleSpec::build() const {
    int n = static_cast<int>(orders.size());
    FgAbGroup g;
    g.pro2 = pro2;
    bool torsion_seen = false;
    for (const auto& o : orders) {
        if (o == 0) {
            if (torsion_seen)
                throw std::invalid_argument("module: free generators must precede torsion");
            ++g.free_rank;
        } else {
            torsion_seen = true;
            g.torsion.push_back(o);
        }
    }
    if (names.empty()) {
        for (int i = 0; i < n; ++i) g.generator_names.push_back("g" + std::to_string(i));
    } else if (static_cast<int>(names.size()) == n) {
        g.generator_names = names;
    } else {
        throw std::invalid_argument("module: names must match generator count");
    }
    g.check_invariants();
    if (static_cast<int>(action.size()) != n)
        throw std::invalid_argument("module: action must be square of generator count");
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(action[i].size()) != n)
            throw std::invalid_argument("module: action must be square of generator count");
        for (int j = 0; j < n; ++j) a.at(i, j) = action[i][j];
    }
    return {std::move(g), std::move(a)};
}

CoefficientFamily FamilySpec::expand(int t_lo, int t_hi) const {
    CoefficientFamily f;
    if (t_min && *t_min > t_lo) t_lo = *t_min;
    if (!periodic) {
        for (const auto& [t, m] : groups)
            if (t >= t_lo && t <= t_hi) f.modules[t] = m.build();
        return f;
    }
    if (period < 1) throw std::invalid_argument("family: period must be positive");
    for (const auto& [t0, m] : groups) {
        C2Module built = m.build();
        // first t >= t_lo congruent to t0 mod period
        int k = (t_lo - t0) >= 0 ? (t_lo - t0 + period - 1) / period : -((t0 - t_lo) / period);
        for (int t = t0 + k * period; t <= t_hi; t += period)
            if (t >= t_lo) f.modules[t] = built;
    }
    return f;
}

RingPresentation PresentationSpec::build() const {
    RingPresentation p;
    int with_weight = 0;
    for (const auto& g : generators) {
        if (g.weight) ++with_weight;
        p.generators.push_back({g.name, {g.t, g.s, g.weight.value_or(0)}, g.order});
    }
    if (with_weight != 0 && with_weight != static_cast<int>(generators.size()))
        throw std::invalid_argument("presentation: weights must be given on all generators or none");
    p.has_weights = with_weight != 0;
    p.invertible.assign(generators.size(), false);
    for (const auto& n : invertible) {
        int i = p.gen_index(n);
        if (i < 0) throw std::invalid_argument("presentation: unknown invertible generator " + n);
        p.invertible[static_cast<size_t>(i)] = true;
    }
    for (const auto& rel : relations) {
        Polynomial lhs = p.parse_polynomial(rel.lhs);
        if (lhs.size() != 1 || lhs[0].coeff < 1)
            throw std::invalid_argument("presentation: relation lhs must be a single term with positive coefficient: " + rel.lhs);
        p.relations.push_back({lhs[0].coeff, lhs[0].mono, p.parse_polynomial(rel.rhs)});
    }
    return p;
}

// ---------------------------------------------------------------- builtins

namespace {

PresentationSpec e2_presentation() {
    PresentationSpec p;
    p.generators = {{"a", 4, 0, {}, 0}, {"h1", 2, 1, {}, 0}, {"z", 0, 2, {}, 2}};
    p.relations = {{"2h1", "0"}, {"a*z", "h1^2"}};
    return p;
}

PresentationSpec classical_presentation() {
    PresentationSpec p;
    p.generators = {{"a", 4, 0, {}, 0}, {"h1", 2, 1, {}, 0}};
    p.relations = {{"2h1", "0"}};
    p.invertible = {"a"};
    return p;
}

PresentationSpec kq_presentation() {
    PresentationSpec p;
    p.generators = {{"a", 4, 0, 2, 0}, {"b", 8, 0, 4, 0}, {"tau", 0, 0, -1, 0},
                    {"h1", 1, 0, 1, 0}};
    p.relations = {{"2h1", "0"}, {"tau*h1^3", "0"}, {"a^2", "4b"}, {"h1*a", "0"}};
    p.invertible = {"b"};
    return p;
}

FamilySpec ku_periodic(bool connective) {
    FamilySpec f;
    f.periodic = true;
    f.period = 4;
    if (connective) f.t_min = 0;
    f.groups.push_back({0, ModuleSpec{{0}, {{1}}, {"v"}, true}});
    f.groups.push_back({2, ModuleSpec{{0}, {{-1}}, {"v"}, true}});
    return f;
}

ModuleSpec units_model() {
    // units of the 2-adic integers: Z/2 (+) pro-2 free, trivial involution
    return ModuleSpec{{0, 2}, {{1, 0}, {0, 1}}, {"u", "w"}, true};
}

FgAbGroup expected_group(int rank, std::vector<mpz_class> orders, bool pro2) {
    FgAbGroup g;
    g.free_rank = rank;
    g.torsion = std::move(orders);
    g.pro2 = pro2;
    for (int i = 0; i < g.num_generators(); ++i)
        g.generator_names.push_back("e" + std::to_string(i));
    return g;
}

std::map<int, FgAbGroup> ko_line() {
    std::map<int, FgAbGroup> e;
    e[0] = expected_group(1, {}, true);
    e[1] = expected_group(0, {2}, false);
    e[2] = expected_group(0, {2}, false);
    e[3] = FgAbGroup::trivial();
    e[4] = expected_group(1, {}, true);
    e[5] = FgAbGroup::trivial();
    e[6] = FgAbGroup::trivial();
    e[7] = FgAbGroup::trivial();
    e[8] = expected_group(1, {}, true);
    return e;
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"ko-endo", "pic-kgl-2adic", "pic-ko-classical", "kq-weight0"};
}

Scenario builtin(const std::string& name) {
    Scenario sc;
    sc.name = name;
    if (name == "ko-endo") {
        sc.mode = Mode::Endomorphism;
        sc.coefficients = ku_periodic(true);
        sc.presentation = e2_presentation();
        sc.differentials = {{3, "a", "h1^3"}};
        sc.permanent = {"h1"};
        sc.expected_abutment = ko_line();
    } else if (name == "pic-kgl-2adic") {
        sc.mode = Mode::Picard;
        sc.coefficients = ku_periodic(true);
        sc.presentation = e2_presentation();
        sc.differentials = {{3, "a", "h1^3"}};
        sc.permanent = {"h1", "S"};
        sc.pic0 = ModuleSpec{{0}, {{1}}, {"S"}, true};
        sc.pic1 = units_model();
        FgAbGroup lb;
        lb.free_rank = 1;
        lb.torsion = {4};
        lb.generator_names = {"S", "x"};
        sc.lower_bound = lb;
    } else if (name == "pic-ko-classical") {
        sc.mode = Mode::Picard;
        sc.coefficients = ku_periodic(false);
        sc.presentation = classical_presentation();
        sc.differentials = {{3, "a", "h1^3"}};
        sc.permanent = {"h1", "S"};
        sc.pic0 = ModuleSpec{{2}, {{1}}, {"S"}, false};
        sc.pic1 = units_model();
        FgAbGroup lb;
        lb.torsion = {8};
        lb.generator_names = {"S"};
        sc.lower_bound = lb;
    } else if (name == "kq-weight0") {
        sc.mode = Mode::WeightZero;
        sc.window = {0, 8, 0};  // stem fields double as the t-range here
        sc.presentation = kq_presentation();
        sc.expected_abutment = ko_line();
    } else {
        throw UnknownScenario(name);
    }
    return sc;
}

// ---------------------------------------------------------------- json

namespace {

long to_long(const mpz_class& z) { return static_cast<long>(z.get_si()); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field \"" + std::string(key) + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + "." + key + ": " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, const std::string& where, T def) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + "." + key + ": " + e.what());
    }
}

ordered_json module_to_json(const ModuleSpec& m) {
    ordered_json j;
    ordered_json orders = ordered_json::array();
    for (const auto& o : m.orders) orders.push_back(to_long(o));
    j["orders"] = std::move(orders);
    j["action"] = ordered_json::array();
    for (const auto& row : m.action) {
        ordered_json r = ordered_json::array();
        for (const auto& v : row) r.push_back(to_long(v));
        j["action"].push_back(std::move(r));
    }
    if (!m.names.empty()) j["names"] = m.names;
    j["pro2"] = m.pro2;
    return j;
}

ModuleSpec module_from_json(const json& j, const std::string& where) {
    check_keys(j, {"orders", "action", "names", "pro2"}, where);
    ModuleSpec m;
    for (long o : field<std::vector<long>>(j, "orders", where)) m.orders.push_back(o);
    for (const auto& row : field<std::vector<std::vector<long>>>(j, "action", where)) {
        m.action.emplace_back();
        for (long v : row) m.action.back().push_back(v);
    }
    m.names = field_or<std::vector<std::string>>(j, "names", where, {});
    m.pro2 = field_or<bool>(j, "pro2", where, true);
    return m;
}

ordered_json group_to_json(const FgAbGroup& g) {
    ordered_json j;
    j["rank"] = g.free_rank;
    ordered_json orders = ordered_json::array();
    for (const auto& o : g.torsion) orders.push_back(to_long(o));
    j["orders"] = std::move(orders);
    if (!g.generator_names.empty()) j["names"] = g.generator_names;
    if (g.pro2) j["pro2"] = true;
    return j;
}

FgAbGroup group_from_json(const json& j, const std::string& where) {
    check_keys(j, {"rank", "orders", "names", "pro2"}, where);
    FgAbGroup g;
    g.free_rank = field<int>(j, "rank", where);
    for (long o : field<std::vector<long>>(j, "orders", where)) g.torsion.push_back(o);
    g.generator_names = field_or<std::vector<std::string>>(j, "names", where, {});
    if (g.generator_names.empty())
        for (int i = 0; i < g.num_generators(); ++i)
            g.generator_names.push_back("e" + std::to_string(i));
    g.pro2 = field_or<bool>(j, "pro2", where, false);
    try {
        g.check_invariants();
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    return g;
}

ordered_json family_to_json(const FamilySpec& f) {
    auto groups = [&] {
        ordered_json a = ordered_json::array();
        for (const auto& [t, m] : f.groups) {
            ordered_json e = module_to_json(m);
            ordered_json g;
            g["t"] = t;
            g.update(e);
            a.push_back(std::move(g));
        }
        return a;
    }();
    if (!f.periodic) return groups;
    ordered_json p;
    p["period"] = f.period;
    if (f.t_min) p["t_min"] = *f.t_min;
    p["groups"] = std::move(groups);
    ordered_json j;
    j["periodic"] = std::move(p);
    return j;
}

std::vector<std::pair<int, ModuleSpec>> family_groups_from_json(const json& j,
                                                                const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    std::vector<std::pair<int, ModuleSpec>> out;
    int i = 0;
    for (const auto& e : j) {
        std::string here = where + "[" + std::to_string(i++) + "]";
        check_keys(e, {"t", "orders", "action", "names", "pro2"}, here);
        json m = e;
        int t = field<int>(m, "t", here);
        m.erase("t");
        out.push_back({t, module_from_json(m, here)});
    }
    return out;
}

FamilySpec family_from_json(const json& j, const std::string& where) {
    FamilySpec f;
    if (j.is_array()) {
        f.groups = family_groups_from_json(j, where);
        return f;
    }
    check_keys(j, {"periodic"}, where);
    const json& p = j.at("periodic");
    check_keys(p, {"period", "t_min", "groups"}, where + ".periodic");
    f.periodic = true;
    f.period = field<int>(p, "period", where + ".periodic");
    if (p.contains("t_min")) f.t_min = field<int>(p, "t_min", where + ".periodic");
    f.groups = family_groups_from_json(p.at("groups"), where + ".periodic.groups");
    return f;
}

ordered_json presentation_to_json(const PresentationSpec& p) {
    ordered_json j;
    j["generators"] = ordered_json::array();
    for (const auto& g : p.generators) {
        ordered_json e;
        e["name"] = g.name;
        e["t"] = g.t;
        e["s"] = g.s;
        if (g.weight) e["weight"] = *g.weight;
        e["order"] = to_long(g.order);
        j["generators"].push_back(std::move(e));
    }
    j["relations"] = ordered_json::array();
    for (const auto& r : p.relations) {
        ordered_json e;
        e["lhs"] = r.lhs;
        e["rhs"] = r.rhs;
        j["relations"].push_back(std::move(e));
    }
    if (!p.invertible.empty()) j["invertible"] = p.invertible;
    return j;
}

PresentationSpec presentation_from_json(const json& j, const std::string& where) {
    check_keys(j, {"generators", "relations", "invertible"}, where);
    PresentationSpec p;
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw ParseError(where + ": missing generators array");
    int i = 0;
    for (const auto& e : j.at("generators")) {
        std::string here = where + ".generators[" + std::to_string(i++) + "]";
        check_keys(e, {"name", "t", "s", "weight", "order"}, here);
        GeneratorSpec g;
        g.name = field<std::string>(e, "name", here);
        g.t = field<int>(e, "t", here);
        g.s = field_or<int>(e, "s", here, 0);
        if (e.contains("weight")) g.weight = field<int>(e, "weight", here);
        g.order = field_or<long>(e, "order", here, 0);
        p.generators.push_back(std::move(g));
    }
    i = 0;
    for (const auto& e : j.value("relations", json::array())) {
        std::string here = where + ".relations[" + std::to_string(i++) + "]";
        check_keys(e, {"lhs", "rhs"}, here);
        p.relations.push_back({field<std::string>(e, "lhs", here),
                               field<std::string>(e, "rhs", here)});
    }
    p.invertible = field_or<std::vector<std::string>>(j, "invertible", where, {});
    return p;
}

}  // namespace

ordered_json scenario_to_json(const Scenario& s) {
    ordered_json j;
    j["name"] = s.name;
    j["mode"] = mode_name(s.mode);
    j["window"] = {{"stem_min", s.window.stem_min},
                   {"stem_max", s.window.stem_max},
                   {"filtration_max", s.window.filtration_max}};
    if (!s.coefficients.empty()) j["coefficients"] = family_to_json(s.coefficients);
    if (s.pic0) j["pic0"] = module_to_json(*s.pic0);
    if (s.pic1) j["pic1"] = module_to_json(*s.pic1);
    if (s.mode == Mode::Picard) j["import_min_t_offset"] = s.import_min_t_offset;
    if (s.presentation) j["presentation"] = presentation_to_json(*s.presentation);
    if (!s.differentials.empty()) {
        j["differentials"] = ordered_json::array();
        for (const auto& d : s.differentials)
            j["differentials"].push_back(
                {{"page", d.page}, {"source", d.source}, {"target", d.target}});
    }
    if (!s.permanent.empty()) j["permanent"] = s.permanent;
    if (!s.expected_abutment.empty()) {
        j["expected_abutment"] = ordered_json::array();
        for (const auto& [stem, g] : s.expected_abutment) {
            ordered_json e;
            e["stem"] = stem;
            e.update(group_to_json(g));
            j["expected_abutment"].push_back(std::move(e));
        }
    }
    if (s.lower_bound) j["lower_bound"] = group_to_json(*s.lower_bound);
    return j;
}

Scenario scenario_from_json(const json& j) {
    check_keys(j,
               {"name", "mode", "window", "coefficients", "pic0", "pic1", "import_min_t_offset",
                "presentation", "differentials", "permanent", "expected_abutment", "lower_bound"},
               "scenario");
    Scenario s;
    s.name = field<std::string>(j, "name", "scenario");
    std::string mode = field<std::string>(j, "mode", "scenario");
    if (mode == "endomorphism") s.mode = Mode::Endomorphism;
    else if (mode == "picard") s.mode = Mode::Picard;
    else if (mode == "weight0") s.mode = Mode::WeightZero;
    else throw ParseError("scenario.mode: unknown mode \"" + mode + "\"");
    if (j.contains("window")) {
        const json& w = j.at("window");
        check_keys(w, {"stem_min", "stem_max", "filtration_max"}, "scenario.window");
        s.window.stem_min = field_or<int>(w, "stem_min", "scenario.window", s.window.stem_min);
        s.window.stem_max = field_or<int>(w, "stem_max", "scenario.window", s.window.stem_max);
        s.window.filtration_max =
            field_or<int>(w, "filtration_max", "scenario.window", s.window.filtration_max);
    }
    if (j.contains("coefficients"))
        s.coefficients = family_from_json(j.at("coefficients"), "scenario.coefficients");
    if (j.contains("pic0")) s.pic0 = module_from_json(j.at("pic0"), "scenario.pic0");
    if (j.contains("pic1")) s.pic1 = module_from_json(j.at("pic1"), "scenario.pic1");
    s.import_min_t_offset = field_or<int>(j, "import_min_t_offset", "scenario", 1);
    if (j.contains("presentation"))
        s.presentation = presentation_from_json(j.at("presentation"), "scenario.presentation");
    int i = 0;
    for (const auto& e : j.value("differentials", json::array())) {
        std::string here = "scenario.differentials[" + std::to_string(i++) + "]";
        check_keys(e, {"page", "source", "target"}, here);
        s.differentials.push_back({field<int>(e, "page", here),
                                   field<std::string>(e, "source", here),
                                   field<std::string>(e, "target", here)});
    }
    s.permanent = field_or<std::vector<std::string>>(j, "permanent", "scenario", {});
    i = 0;
    for (const auto& e : j.value("expected_abutment", json::array())) {
        std::string here = "scenario.expected_abutment[" + std::to_string(i++) + "]";
        check_keys(e, {"stem", "rank", "orders", "names", "pro2"}, here);
        int stem = field<int>(e, "stem", here);
        json g = e;
        g.erase("stem");
        if (s.expected_abutment.count(stem)) throw ParseError(here + ": duplicate stem");
        s.expected_abutment[stem] = group_from_json(g, here);
    }
    if (j.contains("lower_bound"))
        s.lower_bound = group_from_json(j.at("lower_bound"), "scenario.lower_bound");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

std::vector<std::string> validate(const Scenario& sc) {
    std::vector<std::string> out;
    if (sc.window.stem_min > sc.window.stem_max) out.push_back("window: stem_min > stem_max");
    if (sc.window.filtration_max < 0) out.push_back("window: negative filtration_max");

    auto check_module = [&](const ModuleSpec& m, const std::string& where) {
        try {
            C2Module built = m.build();
            for (const auto& v : hfpss::validate(built)) out.push_back(where + ": " + v);
        } catch (const std::invalid_argument& e) {
            out.push_back(where + ": " + e.what());
        }
    };
    for (const auto& [t, m] : sc.coefficients.groups)
        check_module(m, "coefficients t=" + std::to_string(t));
    if (sc.coefficients.periodic && sc.coefficients.period < 1)
        out.push_back("coefficients: period must be positive");
    if (sc.pic0) check_module(*sc.pic0, "pic0");
    if (sc.pic1) check_module(*sc.pic1, "pic1");

    std::optional<RingPresentation> ring;
    if (sc.presentation) {
        try {
            ring = sc.presentation->build();
            for (const auto& v : ring->validate()) out.push_back("presentation: " + v);
            if (out.empty() && !ring->signs_unambiguous())
                out.push_back("presentation: sign-ambiguous odd-stem products");
        } catch (const std::exception& e) {
            out.push_back(std::string("presentation: ") + e.what());
            ring.reset();
        }
    }

    for (const auto& d : sc.differentials) {
        std::string where = "differential d" + std::to_string(d.page) + "(" + d.source + ")";
        if (d.page < 2) {
            out.push_back(where + ": page must be >= 2");
            continue;
        }
        if (!ring) {
            out.push_back(where + ": no presentation to interpret it");
            continue;
        }
        int gi = ring->gen_index(d.source);
        if (gi < 0) {
            out.push_back(where + ": unknown generator");
            continue;
        }
        Polynomial target;
        try {
            target = ring->parse_polynomial(d.target);
        } catch (const std::invalid_argument& e) {
            out.push_back(where + ": " + e.what());
            continue;
        }
        Degree want = ring->generators[static_cast<size_t>(gi)].degree +
                      Degree{d.page - 1, d.page, 0};
        for (const auto& term : target)
            if (!(ring->monomial_degree(term.mono) == want))
                out.push_back(where + ": target term " + ring->format_monomial(term.mono) +
                              " is not in the d" + std::to_string(d.page) + " bidegree");
    }

    switch (sc.mode) {
        case Mode::Endomorphism:
            if (sc.coefficients.empty()) out.push_back("endomorphism mode needs coefficients");
            break;
        case Mode::Picard:
            if (sc.coefficients.empty()) out.push_back("picard mode needs endomorphism coefficients");
            if (!sc.pic0 || !sc.pic1) out.push_back("picard mode needs pic0 and pic1");
            if (!sc.lower_bound) out.push_back("picard mode needs a lower_bound");
            break;
        case Mode::WeightZero:
            if (!sc.presentation) out.push_back("weight0 mode needs a presentation");
            else if (ring && !ring->has_weights)
                out.push_back("weight0 mode needs a weight-graded presentation");
            break;
    }

    for (const auto& [stem, g] : sc.expected_abutment) {
        try {
            g.check_invariants();
        } catch (const std::invalid_argument& e) {
            out.push_back("expected_abutment stem " + std::to_string(stem) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace hfpss
