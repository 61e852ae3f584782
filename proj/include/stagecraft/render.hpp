// Text and SVG pictures of shapes and supertiles.
#pragma once

#include <optional>
#include <string>

#include "stagecraft/polyomino.hpp"
#include "stagecraft/tiles.hpp"

namespace stagecraft {

enum class RenderFormat { Ascii, Svg };
std::optional<RenderFormat> parse_render_format(const std::string& s);

// Occupied cells as '#', empty ones as '.', one line per row. Matches render_ascii of the
// supertile's shape.
std::string render_ascii(const Supertile& s);

struct SvgOptions {
  int cell = 32;            // pixels per tile
  bool glue_labels = true;  // print each non-null face label inside its edge
};

// Tiles as unit squares colored by role: flooding tiles, strength-2 backbone tiles, tiles
// carrying the red or blue boundary glues, and everything else.
std::string render_svg(const Supertile& s, const TileSystem& ts, const SvgOptions& opt = {});
std::string render_svg(const Polyomino& p, const SvgOptions& opt = {});

}  // namespace stagecraft
