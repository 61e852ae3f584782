#include <doctest.h>

#include <algorithm>
#include <random>

#include "stagecraft/polyomino.hpp"

using namespace stagecraft;

namespace {

int strip_total(const BoundaryComponent& c) {
  int total = 0;
  for (const Strip& s : c.strips) total += static_cast<int>(s.pixels.size());
  return total;
}

// Pixels appearing in two strips of the same component.
int shared_corners(const BoundaryComponent& c) {
  PointMap<int> seen;
  for (const Strip& s : c.strips)
    for (GridPoint p : s.pixels) ++seen[p];
  int shared = 0;
  for (const auto& [p, n] : seen) shared += n - 1;
  return shared;
}

Polyomino random_polyomino(std::mt19937_64& rng, int box, int cells) {
  std::vector<GridPoint> pts{{0, 0}};
  PointSet in{{0, 0}};
  std::uniform_int_distribution<int> pick_dir(0, 3);
  for (int guard = 0; static_cast<int>(pts.size()) < cells && guard < 10000; ++guard) {
    GridPoint p = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
    GridPoint q = step(p, kDirs[pick_dir(rng)]);
    if (q.x < 0 || q.y < 0 || q.x >= box || q.y >= box || in.count(q)) continue;
    in.insert(q);
    pts.push_back(q);
  }
  return Polyomino::from_pixels(pts);
}

}  // namespace

TEST_CASE("parse_ascii: single pixel, square, annulus") {
  Polyomino one = parse_ascii("#");
  CHECK(one.size() == 1);
  CHECK(one.pixels().front() == GridPoint{0, 0});

  Polyomino sq = parse_ascii("##\n##");
  CHECK(sq.size() == 4);
  CHECK(vertex_count(sq) == 4);

  Polyomino ring = parse_ascii("###\n#.#\n###");
  CHECK(ring.size() == 8);
  CHECK(hole_count(ring) == 1);
}

TEST_CASE("parse_ascii: rows map to increasing y and translation is canonical") {
  Polyomino p = parse_ascii("...\n.#.\n.##\n");
  CHECK(p.size() == 3);
  CHECK(p.contains({0, 0}));
  CHECK(p.contains({0, 1}));
  CHECK(p.contains({1, 1}));
}

TEST_CASE("parse_ascii errors") {
  CHECK_THROWS_AS(parse_ascii(""), GeometryError);
  CHECK_THROWS_AS(parse_ascii("...\n..."), GeometryError);
  CHECK_THROWS_AS(parse_ascii("#.#"), GeometryError);
  CHECK_THROWS_AS(parse_ascii("#x"), GeometryError);
}

TEST_CASE("scale examples and composition") {
  CHECK(scale(parse_ascii("#"), 3) == parse_ascii("###\n###\n###"));
  CHECK(scale(parse_ascii("##\n##"), 3).size() == 36);
  Polyomino ring9 = scale(parse_ascii("###\n#.#\n###"), 3);
  CHECK(ring9.width() == 9);
  CHECK(ring9.size() == 72);
  CHECK(hole_count(ring9) == 1);
  CHECK(holes(ring9).front().size() == 9);
  CHECK_THROWS_AS(scale(parse_ascii("#"), 0), GeometryError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    Polyomino p = random_polyomino(rng, 5, 6);
    CHECK(scale(scale(p, 2), 3) == scale(p, 6));
  }
}

TEST_CASE("boundary pixels") {
  auto b3 = boundary_pixels(parse_ascii("###\n###\n###"));
  CHECK(b3.size() == 8);
  CHECK(std::find(b3.begin(), b3.end(), GridPoint{1, 1}) == b3.end());
  CHECK(boundary_pixels(parse_ascii("##\n##")).size() == 4);
  CHECK(boundary_pixels(parse_ascii("#####")).size() == 5);
}

TEST_CASE("boundary pixels of a 3-scaled shape never have a full 8-neighborhood") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    Polyomino p = scale(random_polyomino(rng, 6, 10), 3);
    for (GridPoint b : boundary_pixels(p)) {
      bool full = true;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (!p.contains({b.x + dx, b.y + dy})) full = false;
      CHECK_FALSE(full);
    }
  }
}

TEST_CASE("vertices and reflex vertices") {
  Polyomino rect = parse_ascii("####\n####");
  CHECK(vertices(rect).size() == 4);
  CHECK(reflex_vertices(rect).empty());

  Polyomino ell = parse_ascii("#.\n##");
  CHECK(vertices(ell).size() == 6);
  auto reflex = reflex_vertices(ell);
  REQUIRE(reflex.size() == 1);
  CHECK(reflex.front() == GridPoint{1, 1});
  CHECK(vertex_count(parse_ascii("#####")) == 4);
}

TEST_CASE("vertex count is even and at least 4") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Polyomino p = random_polyomino(rng, 6, 2 + i % 15);
    int k = vertex_count(p);
    CHECK(k % 2 == 0);
    CHECK(k >= 4);
  }
}

TEST_CASE("corner pixels of a 3x3 square are its four corners") {
  auto c = corner_pixels(parse_ascii("###\n###\n###"));
  std::sort(c.begin(), c.end());
  CHECK(c == std::vector<GridPoint>{{0, 0}, {2, 0}, {0, 2}, {2, 2}});
}

TEST_CASE("boundary components and strips") {
  auto sq = boundary_components(parse_ascii("###\n###\n###"));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].kind == ComponentKind::Outside);
  REQUIRE(sq[0].strips.size() == 4);
  for (const Strip& s : sq[0].strips) CHECK(s.pixels.size() == 3);
  CHECK(sq[0].is_cycle);

  auto ring = boundary_components(scale(parse_ascii("###\n#.#\n###"), 3));
  REQUIRE(ring.size() == 2);
  CHECK(ring[0].kind == ComponentKind::Outside);
  CHECK(ring[1].kind == ComponentKind::Inside);

  auto one = boundary_components(parse_ascii("#"));
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].strips.size() == 1);
  CHECK(one[0].strips[0].pixels.size() == 1);
}

TEST_CASE("strips alternate orientation and share exactly one corner with the next") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Polyomino p = scale(random_polyomino(rng, 6, 3 + i % 12), 3);
    if (is_pinched(p)) continue;
    for (const BoundaryComponent& c : boundary_components(p)) {
      CHECK(strip_total(c) - shared_corners(c) == static_cast<int>(c.pixels.size()));
      if (!c.is_cycle) continue;
      for (std::size_t s = 0; s < c.strips.size(); ++s) {
        const Strip& a = c.strips[s];
        const Strip& b = c.strips[(s + 1) % c.strips.size()];
        CHECK(a.orientation != b.orientation);
        int common = 0;
        for (GridPoint q : a.pixels) common += std::count(b.pixels.begin(), b.pixels.end(), q);
        CHECK(common == 1);
      }
    }
  }
}

TEST_CASE("holes and thickness") {
  CHECK(hole_count(parse_ascii("###\n#.#\n###")) == 1);
  CHECK(hole_count(parse_ascii("#####\n#.#.#\n#####")) == 2);
  CHECK(hole_count(parse_ascii("##\n##")) == 0);
  CHECK(vertical_thickness(parse_ascii("####\n####\n####\n####")) == 4);
  CHECK(vertical_thickness(parse_ascii("#.\n##")) == 1);
  CHECK(vertical_thickness(scale(parse_ascii("#.\n##"), 4)) == 4);
}

TEST_CASE("pinch detection") {
  CHECK(is_pinched(parse_ascii("##.\n#.#\n###")));
  CHECK_FALSE(is_pinched(parse_ascii("###.\n#.##\n####")));
  CHECK_FALSE(is_pinched(parse_ascii("###\n#.#\n###")));
}

TEST_CASE("render round trip") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    Polyomino p = random_polyomino(rng, 7, 1 + i % 20);
    CHECK(parse_ascii(render_ascii(p)) == p);
  }
}
