#include "stagecraft/render.hpp"

#include <sstream>

namespace stagecraft {

namespace {

const char* fill_for(const TileType& t, const TileSystem& ts) {
  if (t.name.rfind("flood", 0) == 0) return "#f2d15c";
  bool strong = false, marked = false;
  for (GlueId g : t.faces) {
    if (g == kNullGlue) continue;
    const Glue& info = ts.glue_info(g);
    if (info.strength >= 2) strong = true;
    if (info.label == "red" || info.label == "blue") marked = true;
  }
  if (strong) return "#4f7fd1";
  if (marked) return "#d9776b";
  return "#c8c8c8";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_svg(std::ostringstream& os, int w, int h, int cell) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell << "\" height=\"" << h * cell
     << "\" viewBox=\"0 0 " << w * cell << ' ' << h * cell << "\">\n";
}

}  // namespace

std::optional<RenderFormat> parse_render_format(const std::string& s) {
  if (s == "ascii") return RenderFormat::Ascii;
  if (s == "svg") return RenderFormat::Svg;
  return std::nullopt;
}

std::string render_ascii(const Supertile& s) {
  std::string out;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) out += s.at({x, y}) >= 0 ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::string render_svg(const Supertile& s, const TileSystem& ts, const SvgOptions& opt) {
  std::ostringstream os;
  const int c = opt.cell;
  open_svg(os, s.width(), s.height(), c);
  for (const Cell& cell : s.cells()) {
    const TileType& t = ts.tile(cell.tile);
    os << "  <rect x=\"" << cell.x * c << "\" y=\"" << cell.y * c << "\" width=\"" << c << "\" height=\"" << c
       << "\" fill=\"" << fill_for(t, ts) << "\" stroke=\"#333\" stroke-width=\"1\"><title>" << escape(t.name)
       << "</title></rect>\n";
  }
  if (opt.glue_labels) {
    // Label anchors just inside each edge midpoint, in N, E, S, W order.
    const double fx[4] = {0.5, 0.85, 0.5, 0.15};
    const double fy[4] = {0.22, 0.55, 0.9, 0.55};
    const int font = std::max(6, c / 5);
    for (const Cell& cell : s.cells()) {
      const TileType& t = ts.tile(cell.tile);
      for (int d = 0; d < 4; ++d) {
        if (t.faces[d] == kNullGlue) continue;
        os << "  <text x=\"" << (cell.x + fx[d]) * c << "\" y=\"" << (cell.y + fy[d]) * c << "\" font-size=\"" << font
           << "\" text-anchor=\"middle\" font-family=\"monospace\">" << escape(ts.glue_info(t.faces[d]).label)
           << "</text>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const Polyomino& p, const SvgOptions& opt) {
  std::ostringstream os;
  const int c = opt.cell;
  open_svg(os, p.width(), p.height(), c);
  for (GridPoint q : p.pixels())
    os << "  <rect x=\"" << q.x * c << "\" y=\"" << q.y * c << "\" width=\"" << c << "\" height=\"" << c
       << "\" fill=\"#c8c8c8\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace stagecraft
