#include <doctest.h>

#include <set>

#include "stagecraft/compilers.hpp"
#include "stagecraft/fixtures.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

namespace {

const char* kWaffle =
    "#######\n"
    "#.#.#.#\n"
    "#######\n"
    "#.#.#.#\n"
    "#######\n";

void check_invariants(const S1S2Partition& part) {
  REQUIRE(is_connected(part.s2));
  Polyomino s2 = Polyomino::from_pixels(part.s2);
  CHECK(hole_count(s2) == 0);
  CHECK(vertical_thickness(s2) >= 4);
  CHECK(part.s1.size() + part.s2.size() == part.scaled.pixels().size());
  CHECK(part.bridges.size() + 1 == part.rings.size());
  for (std::size_t i = 0; i < part.bridges.size(); ++i) {
    int r = static_cast<int>(i) + 1, steps = 0;
    while (r != 0 && steps++ <= static_cast<int>(part.rings.size())) r = part.bridge_parent[r - 1];
    CHECK(r == 0);
  }
}

}  // namespace

TEST_CASE("s1/s2: hole-free shapes keep only the outside ring") {
  S1S2Partition part = partition_s1_s2(fixtures::l_shape());
  CHECK(part.rings.size() == 1);
  CHECK(part.bridges.empty());
  check_invariants(part);
}

TEST_CASE("s1/s2: annulus has one bridge from the hole ring to the outside") {
  S1S2Partition part = partition_s1_s2(fixtures::annulus());
  REQUIRE(part.bridges.size() == 1);
  CHECK(part.bridge_parent[0] == 0);
  // The bridge is one row, running left from the hole ring to the outer ring.
  std::set<int> rows;
  for (GridPoint b : part.bridges[0]) rows.insert(b.y);
  CHECK(rows.size() == 1);
  CHECK(part.bridges[0].size() == 4);
  check_invariants(part);
}

TEST_CASE("s1/s2: waffle shape gives a bridge tree rooted outside") {
  S1S2Partition part = partition_s1_s2(parse_ascii(kWaffle));
  CHECK(part.rings.size() == 7);
  check_invariants(part);
  // The right-hand holes hang off their left neighbors.
  int to_outside = 0;
  for (int parent : part.bridge_parent) to_outside += parent == 0;
  CHECK(to_outside == 2);
}

TEST_CASE("s1/s2: red and blue markings point out of S2") {
  S1S2Partition part = partition_s1_s2(fixtures::two_holes());
  std::set<GridPoint> s1(part.s1.begin(), part.s1.end());
  CHECK_FALSE(part.s2_faces.empty());
  for (auto [p, d] : part.s2_faces) CHECK(s1.count(step(p, d)));
}

TEST_CASE("holes-t1: fixtures assemble P^6 at temperature 1 with at most 20 glues") {
  std::vector<std::string> shapes;
  for (const std::string& name : fixtures::names()) shapes.push_back(render_ascii(*fixtures::by_name(name)));
  shapes.push_back(kWaffle);
  for (const std::string& text : shapes) {
    CAPTURE(text);
    StagedSystem sys = compile_holes_t1(parse_ascii(text));
    CHECK(validate(sys).empty());
    Verdict v = simulate_and_verify(sys);
    CHECK(v.ok());
    CHECK(v.complexity.temperature == 1);
    CHECK(v.complexity.scale == 6);
    CHECK(v.complexity.glues <= 20);
  }
}

TEST_CASE("holes-t1: random shapes with holes") {
  int with_holes = 0;
  for (std::uint64_t seed = 0; with_holes < 8 && seed < 2000; ++seed) {
    fixtures::RandomShapeOptions opt;
    opt.box = 8;
    Polyomino p = fixtures::random_polyomino(seed, opt);
    if (hole_count(p) == 0) continue;
    ++with_holes;
    CAPTURE(render_ascii(p));
    Verdict v = simulate_and_verify(compile_holes_t1(p));
    CHECK(v.ok());
  }
  CHECK(with_holes == 8);
}

TEST_CASE("holes-t1: pinched shapes are rejected") {
  CHECK_THROWS_AS(compile_holes_t1(parse_ascii("#.\n.#\n")), std::exception);
}
