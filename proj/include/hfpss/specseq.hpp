#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfpss/c2cohomology.hpp"
#include "hfpss/gradedring.hpp"

namespace hfpss {

struct LeibnizInconsistent : std::runtime_error {
    explicit LeibnizInconsistent(const std::string& what) : std::runtime_error(what) {}
};

struct NoConsistentAssignment : std::runtime_error {
    explicit NoConsistentAssignment(const std::string& what) : std::runtime_error(what) {}
};

struct AmbiguousAssignment : std::runtime_error {
    std::vector<std::string> candidates;
    explicit AmbiguousAssignment(const std::string& what, std::vector<std::string> cands = {})
        : std::runtime_error(what), candidates(std::move(cands)) {}
};

// Chart bounds in Adams indexing: x = stem = t - s, y = filtration = s.
struct Window {
    int stem_min = -4;
    int stem_max = 12;
    int filtration_max = 14;
};

struct CellKey {
    int s = 0;
    int t = 0;
    auto operator<=>(const CellKey&) const = default;
};

enum class Provenance { Seeded, Leibniz, ImportedStable, AssumedZeroUnknown };
std::string provenance_name(Provenance p);

// t -> C2Module; absent t means the zero module.
struct CoefficientFamily {
    std::map<int, C2Module> modules;
    const C2Module& at(int t) const;
};

struct Cell {
    FgAbGroup group;
    std::vector<BasisElement> basis;  // monomial basis, parallel to group generators
    bool has_basis = false;
};

// One page of the spectral sequence. Cells are computed on a window padded by
// `pad` on every side so that every differential from a report-window origin
// lands on a computed cell; only report-window cells are compared or charted.
struct Page {
    int r = 2;
    Window window;
    int pad = 6;
    std::map<CellKey, Cell> cells;  // nonzero cells only

    int s_lo() const { return 0; }
    int s_hi() const { return window.filtration_max + pad; }
    int stem_lo() const { return window.stem_min - pad; }
    int stem_hi() const { return window.stem_max + pad; }
    bool in_padded(int s, int t) const {
        return s >= s_lo() && s <= s_hi() && t - s >= stem_lo() && t - s <= stem_hi();
    }
    bool in_report(int s, int t) const {
        return s >= 0 && s <= window.filtration_max && t - s >= window.stem_min &&
               t - s <= window.stem_max;
    }
    const Cell* cell(int s, int t) const;
    const FgAbGroup& at(int s, int t) const;  // trivial group when absent
};

struct DiffEntry {
    IntMatrix map;  // rows = target generators, cols = origin generators
    Provenance provenance = Provenance::Leibniz;
};

// d_r, keyed by origin (s, t); shift (s, t) -> (s + r, t + r - 1).
struct PageDifferential {
    int r = 2;
    std::map<CellKey, DiffEntry> maps;
    const DiffEntry* at(int s, int t) const;
    bool is_zero() const;
};

struct UnknownSlot {
    int r = 0;
    int s = 0;
    int t = 0;
};

struct MatchReport {
    bool all_match = true;
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;
};

// generator name -> differential target (normal-form polynomial)
using GenDiffs = std::map<std::string, Polynomial>;

// E2 from group cohomology: cell (s, t) = H^s(C2; family(t)).
Page build_e2(const CoefficientFamily& family, const Window& window, int pad = 6);

// E2 cells spanned by the presentation's normal-form monomials, carrying
// monomial bases for differential propagation.
Page build_e2_from_ring(const RingPresentation& ring, const Window& window, int pad = 6,
                        bool pro2 = true);

// Per-bidegree invariant-factor comparison over the report window, plus notes
// for generator orders that the relation set does not exhibit.
MatchReport match_presentation(const Page& cohomology_page, const RingPresentation& ring,
                               const Window& window);

// Completes `seeds` to a total assignment of d_r on generators: permanent
// generators map to 0, the rest are forced by Leibniz-consistency with every
// relation (and generator order). Throws NoConsistentAssignment or
// AmbiguousAssignment.
GenDiffs solve_generator_differentials(const RingPresentation& ring, const Page& page,
                                       const GenDiffs& seeds,
                                       const std::set<std::string>& permanent, int r);

// Extends generator differentials to all basis monomials of the page by the
// Leibniz rule with Koszul signs by stem parity. Verifies d(d(g)) = 0 for
// every generator. Provenance: Seeded on cells containing a seeded
// generator's own monomial, Leibniz elsewhere.
PageDifferential propagate_leibniz(const RingPresentation& ring, const Page& page,
                                   const GenDiffs& diffs, int r,
                                   const std::set<std::string>& seeded_names = {});

// cell_{r+1}(s,t) = ker(d out) / im(d in); cells untouched by nonzero maps are
// copied with their bases intact.
Page turn_page(const Page& page, const PageDifferential& d);

// Nonzero report-window cells on the line t - s = n, ascending filtration.
std::vector<std::pair<int, FgAbGroup>> stem_assoc_graded(const Page& e_inf, int n);

struct StemVerdict {
    int stem = 0;
    bool match = false;
    std::string detail;
};

// Necessary extension-consistency checks per stem: total free rank, total
// torsion order, and each graded piece's exponent dividing the expected
// exponent. Never resolves a particular extension.
std::vector<StemVerdict> check_abutment(
    const std::vector<std::pair<int, std::vector<std::pair<int, FgAbGroup>>>>& gr_by_stem,
    const std::map<int, FgAbGroup>& expected);

struct SsInputs {
    CoefficientFamily family;
    std::optional<RingPresentation> ring;
    std::map<int, GenDiffs> seeds;  // page -> generator differentials
    std::set<std::string> permanent;
    Window window;
    int max_page = 6;
    int pad = 6;
};

struct SsResult {
    std::vector<Page> pages;  // pages[i] is E_{2+i}; back() is the E_infinity claim
    std::map<int, PageDifferential> diffs;
    std::vector<UnknownSlot> flags;  // origins assumed zero without justification
    std::set<CellKey> tainted;       // cells whose fate depends on a flagged slot
    std::map<int, GenDiffs> solved;
    std::optional<MatchReport> match;  // when a ring is supplied
    Page cohomology_e2;

    const Page& final_page() const { return pages.back(); }
    bool has_flag(int r, int s, int t) const;
};

// Runs pages 2..max_page. Ring-propagated pages carry full differential
// knowledge; pages without knowledge get zero differentials, with every
// origin that could support a nonzero map (nonzero source and target, source
// not generated by permanent classes) recorded as an unknown slot.
SsResult run_to_einfty(const SsInputs& in);

// True when every generator name of the cell is a permanent class (an
// integer multiple of a permanent generator counts).
bool permanent_suppressed(const FgAbGroup& g, const std::set<std::string>& permanent);

}  // namespace hfpss
