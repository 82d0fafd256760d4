#include "hfpss/chart.hpp"

#include <algorithm>
#include <sstream>

namespace hfpss {

namespace {

// one glyph per cyclic summand
std::vector<std::string> cell_glyphs(const FgAbGroup& g) {
    std::vector<std::string> out;
    for (int i = 0; i < g.free_rank; ++i) out.push_back(g.pro2 ? "⊙" : "□");
    for (const auto& d : g.torsion)
        out.push_back(d == 2 ? "•" : d.get_str());
    return out;
}

size_t display_width(const std::string& s) {
    size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xc0) != 0x80) ++w;  // count codepoints, not bytes
    return w;
}

struct Arrow {
    CellKey from;
    CellKey to;
    bool dashed;
    std::string label;
};

std::vector<Arrow> collect_arrows(const ChartInput& in) {
    std::vector<Arrow> arrows;
    const Page& p = *in.page;
    if (in.diff) {
        for (const auto& [key, entry] : in.diff->maps) {
            if (entry.map.is_zero()) continue;
            if (!p.in_report(key.s, key.t)) continue;
            arrows.push_back({key,
                              {key.s + p.r, key.t + p.r - 1},
                              entry.provenance == Provenance::AssumedZeroUnknown,
                              provenance_name(entry.provenance)});
        }
    }
    for (const auto& u : in.unknowns) {
        if (u.r != p.r) continue;
        arrows.push_back({{u.s, u.t}, {u.s + p.r, u.t + p.r - 1}, true,
                          provenance_name(Provenance::AssumedZeroUnknown)});
    }
    std::sort(arrows.begin(), arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.from < b.from; });
    return arrows;
}

}  // namespace

std::string render_chart_ascii(const ChartInput& in) {
    const Page& p = *in.page;
    const Window& w = p.window;
    int ncols = w.stem_max - w.stem_min + 1;

    std::vector<std::vector<std::string>> grid(static_cast<size_t>(w.filtration_max + 1),
                                               std::vector<std::string>(static_cast<size_t>(ncols)));
    std::vector<size_t> colw(static_cast<size_t>(ncols), 1);
    for (int s = 0; s <= w.filtration_max; ++s)
        for (int stem = w.stem_min; stem <= w.stem_max; ++stem) {
            const Cell* c = p.cell(s, stem + s);
            if (!c) continue;
            std::string text;
            for (const auto& g : cell_glyphs(c->group)) text += g;
            size_t col = static_cast<size_t>(stem - w.stem_min);
            grid[static_cast<size_t>(s)][col] = text;
            colw[col] = std::max(colw[col], display_width(text));
        }
    for (int stem = w.stem_min; stem <= w.stem_max; ++stem) {
        size_t col = static_cast<size_t>(stem - w.stem_min);
        colw[col] = std::max(colw[col], std::to_string(stem).size());
    }

    std::ostringstream os;
    if (!in.title.empty()) os << in.title << "\n";
    os << "E" << p.r << " page, stems " << w.stem_min << ".." << w.stem_max
       << ", filtration 0.." << w.filtration_max << "\n\n";
    for (int s = w.filtration_max; s >= 0; --s) {
        std::ostringstream label;
        label << s;
        os << std::string(4 - std::min<size_t>(4, label.str().size()), ' ') << label.str() << " |";
        for (size_t col = 0; col < static_cast<size_t>(ncols); ++col) {
            const std::string& text = grid[static_cast<size_t>(s)][col];
            size_t tw = display_width(text);
            size_t left = (colw[col] - tw) / 2;
            os << ' ' << std::string(left, ' ') << (text.empty() ? "." : text)
               << std::string(colw[col] - tw - left - (text.empty() ? 1 : 0), ' ');
        }
        os << "\n";
    }
    os << "     +";
    for (size_t col = 0; col < static_cast<size_t>(ncols); ++col)
        os << std::string(colw[col] + 1, '-');
    os << "\n      ";
    for (int stem = w.stem_min; stem <= w.stem_max; ++stem) {
        size_t col = static_cast<size_t>(stem - w.stem_min);
        std::string label = std::to_string(stem);
        size_t left = (colw[col] - label.size()) / 2;
        os << std::string(left, ' ') << label << std::string(colw[col] - label.size() - left + 1, ' ');
    }
    os << "\n\n□ = Z   • = Z/2   ⊙ = Z_2 (pro-2 free)   n = Z/n\n";

    auto arrows = collect_arrows(in);
    if (!arrows.empty()) {
        os << "\ndifferentials d" << p.r << " (stem, filtration):\n";
        for (const auto& a : arrows)
            os << "  (" << a.from.t - a.from.s << "," << a.from.s << ") -> ("
               << a.to.t - a.to.s << "," << a.to.s << ")  " << a.label
               << (a.dashed ? "  [dashed]" : "") << "\n";
    }
    return os.str();
}

std::string render_chart_svg(const ChartInput& in) {
    const Page& p = *in.page;
    const Window& w = p.window;
    const int cell = 44, margin = 56;
    int ncols = w.stem_max - w.stem_min + 1;
    int nrows = w.filtration_max + 1;
    int width = margin * 2 + ncols * cell;
    int height = margin * 2 + nrows * cell;
    auto cx = [&](int stem) { return margin + (stem - w.stem_min) * cell + cell / 2; };
    auto cy = [&](int s) { return margin + (w.filtration_max - s) * cell + cell / 2; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<defs><marker id=\"arr\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
          "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
          "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#444\"/></marker></defs>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!in.title.empty())
        os << "<text x=\"" << margin << "\" y=\"" << margin / 2
           << "\" font-family=\"sans-serif\" font-size=\"14\">" << in.title << " (E" << p.r
           << ")</text>\n";

    for (int stem = w.stem_min; stem <= w.stem_max; ++stem)
        os << "<text x=\"" << cx(stem) << "\" y=\"" << height - margin / 2
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << stem
           << "</text>\n";
    for (int s = 0; s <= w.filtration_max; ++s)
        os << "<text x=\"" << margin / 2 << "\" y=\"" << cy(s) + 4
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << s
           << "</text>\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << ncols * cell
       << "\" height=\"" << nrows * cell << "\" fill=\"none\" stroke=\"#ccc\"/>\n";

    for (int s = 0; s <= w.filtration_max; ++s)
        for (int stem = w.stem_min; stem <= w.stem_max; ++stem) {
            const Cell* c = p.cell(s, stem + s);
            if (!c) continue;
            auto glyphs = cell_glyphs(c->group);
            int n = static_cast<int>(glyphs.size());
            for (int i = 0; i < n; ++i) {
                int x = cx(stem) + (2 * i - (n - 1)) * 7;
                int y = cy(s);
                const std::string& g = glyphs[static_cast<size_t>(i)];
                if (g == "□")
                    os << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5
                       << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"black\"/>\n";
                else if (g == "•")
                    os << "<circle cx=\"" << x << "\" cy=\"" << y
                       << "\" r=\"4\" fill=\"black\"/>\n";
                else if (g == "⊙")
                    os << "<circle cx=\"" << x << "\" cy=\"" << y
                       << "\" r=\"6\" fill=\"none\" stroke=\"black\"/><circle cx=\"" << x
                       << "\" cy=\"" << y << "\" r=\"1.5\" fill=\"black\"/>\n";
                else
                    os << "<text x=\"" << x << "\" y=\"" << y + 4
                       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
                       << g << "</text>\n";
            }
        }

    for (const auto& a : collect_arrows(in)) {
        int x1 = cx(a.from.t - a.from.s), y1 = cy(a.from.s);
        int x2 = cx(a.to.t - a.to.s), y2 = cy(a.to.s);
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 - 8 << "\" x2=\"" << x2 + 8 << "\" y2=\""
           << y2 + 8 << "\" stroke=\"#444\" marker-end=\"url(#arr)\""
           << (a.dashed ? " stroke-dasharray=\"4 3\"" : "") << "><title>" << a.label
           << "</title></line>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace hfpss
