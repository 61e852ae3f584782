#include <doctest.h>

#include <fstream>
#include <sstream>

#include "stagecraft/compilers.hpp"
#include "stagecraft/fixtures.hpp"
#include "stagecraft/render.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

Supertile product(const StagedSystem& sys) {
  RunReport r = run(sys);
  REQUIRE(r.output.size() == 1);
  return r.output.front();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("render: ascii picture of a P^3 product equals the scaled shape") {
  for (const char* name : {"L", "annulus", "figure"}) {
    CAPTURE(name);
    Polyomino p = *fixtures::by_name(name);
    CHECK(render_ascii(product(compile_polyomino_t2(p))) == render_ascii(scale(p, 3)));
  }
}

TEST_CASE("render: a single tile is one square") {
  TileSystem ts(1);
  GlueId a = ts.add_glue("a", 1);
  int t = ts.add_tile("solo", {a, kNullGlue, kNullGlue, kNullGlue});
  std::string svg = render_svg(Supertile::single(t), ts);
  CHECK(count(svg, "<rect") == 1);
  CHECK(count(svg, "<text") == 1);
  CHECK(svg.find("width=\"32\" height=\"32\"") != std::string::npos);
}

TEST_CASE("render: flooding and backbone tiles get their own colors") {
  StagedSystem sys = compile_polyomino_t2(fixtures::single_pixel());
  std::string svg = render_svg(product(sys), sys.tiles);
  CHECK(count(svg, "<rect") == 9);
  CHECK(count(svg, "#f2d15c") == 2);  // the two cut-strip pixels are flooded
  CHECK(count(svg, "#4f7fd1") == 7);
}

TEST_CASE("render: annulus backbone matches the stored picture") {
  Backbone b = build_backbone(scale(fixtures::annulus(), 3));
  StagedSystem sys = compile_backbone_system(b);
  std::string svg = render_svg(product(sys), sys.tiles, SvgOptions{16, false});
  const std::string path = std::string(STAGECRAFT_TEST_DATA) + "/backbone_annulus.svg";
  std::string stored = read(path);
  REQUIRE_MESSAGE(!stored.empty(), "missing " << path);
  CHECK(svg == stored);
}

TEST_CASE("render: format names") {
  CHECK(parse_render_format("svg") == RenderFormat::Svg);
  CHECK(parse_render_format("ascii") == RenderFormat::Ascii);
  CHECK_FALSE(parse_render_format("png"));
}
