#pragma once

#include <json.hpp>

#include "hfpss/picard.hpp"

namespace hfpss {

struct UnknownScenario : std::runtime_error {
    explicit UnknownScenario(const std::string& name)
        : std::runtime_error("unknown scenario \"" + name + "\"") {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class Mode { Endomorphism, Picard, WeightZero };
std::string mode_name(Mode m);

// A finitely generated group with involution, as scenario data. `orders` is
// one entry per generator, 0 = free, free generators first.
struct ModuleSpec {
    std::vector<mpz_class> orders;
    std::vector<std::vector<mpz_class>> action;  // square, size = #generators
    std::vector<std::string> names;              // optional; defaults g0, g1, ...
    bool pro2 = true;

    C2Module build() const;  // throws std::invalid_argument on malformed data
};

// Coefficient family, either an explicit list of (t, module) or a periodic
// pattern expanded eagerly over whatever window a run needs. `t_min` clamps
// the expansion from below (connective spectra).
struct FamilySpec {
    bool periodic = false;
    int period = 0;
    std::optional<int> t_min;
    std::vector<std::pair<int, ModuleSpec>> groups;

    bool empty() const { return groups.empty(); }
    CoefficientFamily expand(int t_lo, int t_hi) const;
};

struct GeneratorSpec {
    std::string name;
    int t = 0;
    int s = 0;
    std::optional<int> weight;
    mpz_class order = 0;
};

struct RelationSpec {
    std::string lhs;  // e.g. "2h1", "a*z"
    std::string rhs;  // e.g. "0", "h1^2"
};

struct PresentationSpec {
    std::vector<GeneratorSpec> generators;
    std::vector<RelationSpec> relations;
    std::vector<std::string> invertible;

    RingPresentation build() const;  // throws std::invalid_argument
};

struct SeedSpec {
    int page = 0;
    std::string source;  // generator name
    std::string target;  // polynomial
};

struct Scenario {
    std::string name;
    Mode mode = Mode::Endomorphism;
    Window window;
    FamilySpec coefficients;
    std::optional<ModuleSpec> pic0, pic1;
    int import_min_t_offset = 1;
    std::optional<PresentationSpec> presentation;
    std::vector<SeedSpec> differentials;
    std::vector<std::string> permanent;
    std::map<int, FgAbGroup> expected_abutment;  // stem -> group (t -> group in weight-0 mode)
    std::optional<FgAbGroup> lower_bound;
    int max_page = 6;
};

// {"ko-endo", "pic-kgl-2adic", "pic-ko-classical", "kq-weight0"}
std::vector<std::string> builtin_names();
Scenario builtin(const std::string& name);  // throws UnknownScenario

nlohmann::ordered_json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);  // throws ParseError (unknown fields too)

Scenario load_scenario(const std::string& path);          // throws ParseError
void save_scenario(const Scenario& s, const std::string& path);

// Semantic checks: module validity, presentation orientation/termination,
// differential bidegree shifts, referenced generators, window finiteness.
std::vector<std::string> validate(const Scenario& s);

}  // namespace hfpss
