#include <doctest.h>

#include "stagecraft/compilers.hpp"
#include "stagecraft/fixtures.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

namespace {

Polyomino rectangle(int w, int h) {
  std::string text;
  for (int y = 0; y < h; ++y) text += std::string(w, '#') + "\n";
  return parse_ascii(text);
}

std::vector<Polyomino> hole_free_fixtures() {
  return {fixtures::single_pixel(), rectangle(3, 2), fixtures::l_shape(), fixtures::t_shape(),
          fixtures::staircase(3), fixtures::figure()};
}

}  // namespace

TEST_CASE("rect partition: row runs merge into maximal vertical stacks") {
  RectPartition part = rect_partition(fixtures::t_shape());
  REQUIRE(part.rects.size() == 2);
  CHECK(part.rects[0] == Rect{0, 0, 2, 0});
  CHECK(part.rects[1] == Rect{1, 1, 1, 2});
  CHECK(part.is_tree());
}

TEST_CASE("rect partition: annulus gives a cycle of rectangles") {
  RectPartition part = rect_partition(fixtures::annulus());
  CHECK(part.rects.size() == 4);
  CHECK_FALSE(part.is_tree());
}

TEST_CASE("rect partition: hole-free shapes give trees covering every pixel") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    fixtures::RandomShapeOptions opt;
    opt.allow_holes = false;
    Polyomino p = fixtures::random_polyomino(seed, opt);
    RectPartition part = rect_partition(p);
    int area = 0;
    for (const Rect& r : part.rects) area += r.width() * r.height();
    CAPTURE(seed);
    CHECK(area == static_cast<int>(p.pixels().size()));
    CHECK(part.is_tree());
  }
}

TEST_CASE("rect with tabs: keyed rectangles assemble uniquely with nine glues") {
  std::vector<std::vector<RectFeature>> cases{
      {},
      {{Dir::North, 1, 2}},
      {{Dir::North, 0, 1}, {Dir::West, 2, 2}, {Dir::South, 1, 1}, {Dir::East, 0, 2}},
      {{Dir::North, 0, 1}, {Dir::North, 4, 2}, {Dir::East, 1, 1}, {Dir::East, 3, 1}},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    StagedSystem sys = compile_rect_with_tabs(6, 6, cases[i]);
    CHECK(validate(sys).empty());
    Verdict v = simulate_and_verify(sys);
    CHECK(v.ok());
    CHECK(v.complexity.temperature == 1);
    CHECK(v.complexity.glues <= 9);
  }
  CHECK_THROWS_AS(compile_rect_with_tabs(5, 6, {}), PreconditionError);
  CHECK_THROWS_AS(compile_rect_with_tabs(6, 6, {{Dir::North, 5, 2}}), PreconditionError);
}

TEST_CASE("holefree-t1: fixtures assemble P^4 at temperature 1 with 18 glues") {
  for (const Polyomino& p : hole_free_fixtures()) {
    CAPTURE(render_ascii(p));
    StagedSystem sys = compile_holefree_t1(p);
    CHECK(validate(sys).empty());
    Verdict v = simulate_and_verify(sys);
    CHECK(v.ok());
    CHECK(v.complexity.scale == 4);
    CHECK(v.complexity.temperature == 1);
    CHECK(v.complexity.glues <= 18);
  }
}

TEST_CASE("holefree-t1: pre-scaled thick shapes assemble at scale 1") {
  Polyomino thick = scale(fixtures::l_shape(), 4);
  Verdict v = simulate_and_verify(compile_holefree_t1(thick, true));
  CHECK(v.ok());
  CHECK(v.complexity.scale == 1);
  CHECK_THROWS_AS(compile_holefree_t1(fixtures::l_shape(), true), PreconditionError);
}

TEST_CASE("holefree-t1: random hole-free shapes") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    fixtures::RandomShapeOptions opt;
    opt.allow_holes = false;
    opt.box = 5;
    Polyomino p = fixtures::random_polyomino(seed, opt);
    CAPTURE(render_ascii(p));
    Verdict v = simulate_and_verify(compile_holefree_t1(p));
    CHECK(v.ok());
  }
}

TEST_CASE("holefree-t1: rejects shapes with holes") {
  try {
    compile_holefree_t1(fixtures::annulus());
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()) == "input has 1 hole");
  }
}
