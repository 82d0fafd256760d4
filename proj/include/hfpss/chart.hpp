#pragma once

#include "hfpss/specseq.hpp"

namespace hfpss {

// Everything a chart needs for one page: the page itself, the outgoing
// differential (if any knowledge exists on it), and the unknown slots whose
// assumed-zero differentials originate on this page.
struct ChartInput {
    const Page* page = nullptr;
    const PageDifferential* diff = nullptr;   // may be null
    std::vector<UnknownSlot> unknowns;        // slots with r == page->r
    std::string title;
};

// Unicode grid over the report window, stems ascending left to right,
// filtration decreasing top to bottom. Glyphs: square = Z, bullet = Z/2,
// circled dot = pro-2 free, numeric label = higher cyclic torsion. Nonzero
// differentials and assumed-zero unknowns are listed below the grid.
std::string render_chart_ascii(const ChartInput& in);

// Self-contained SVG, same conventions; dashed arrows mark assumed-zero
// unknown slots.
std::string render_chart_svg(const ChartInput& in);

}  // namespace hfpss
