#include "stagecraft/fixtures.hpp"

#include <algorithm>
#include <random>

namespace stagecraft::fixtures {

Polyomino single_pixel() { return parse_ascii("#"); }
Polyomino l_shape() { return parse_ascii("#..\n#..\n###"); }
Polyomino t_shape() { return parse_ascii("###\n.#.\n.#."); }
Polyomino annulus() { return parse_ascii("###\n#.#\n###"); }
Polyomino two_holes() { return parse_ascii("#####\n#.#.#\n#####"); }

Polyomino figure() {
  return parse_ascii(
      "..##..\n"
      "..##..\n"
      "######\n"
      "..##..\n"
      ".####.\n"
      ".#..#.");
}

Polyomino staircase(int steps) {
  std::vector<GridPoint> px;
  for (int i = 0; i < steps; ++i) {
    px.push_back({i, i});
    px.push_back({i + 1, i});
  }
  return Polyomino::from_pixels(px);
}

std::vector<std::string> names() {
  return {"pixel", "L", "T", "annulus", "two-holes", "figure", "staircase"};
}

std::optional<Polyomino> by_name(const std::string& name) {
  if (name == "pixel") return single_pixel();
  if (name == "L") return l_shape();
  if (name == "T") return t_shape();
  if (name == "annulus") return annulus();
  if (name == "two-holes") return two_holes();
  if (name == "figure") return figure();
  if (name == "staircase") return staircase(4);
  return std::nullopt;
}

Polyomino random_polyomino(std::uint64_t seed, const RandomShapeOptions& opt) {
  std::mt19937_64 rng(seed);
  const int box = std::max(1, opt.box);
  const int max_area = opt.max_area > 0 ? std::min(opt.max_area, box * box) : box * box;
  const int min_area = std::clamp(opt.min_area, 1, max_area);
  for (;;) {
    const int target = std::uniform_int_distribution<int>(min_area, max_area)(rng);
    PointSet cells;
    std::vector<GridPoint> order;
    GridPoint start{std::uniform_int_distribution<int>(0, box - 1)(rng),
                    std::uniform_int_distribution<int>(0, box - 1)(rng)};
    cells.insert(start);
    order.push_back(start);
    int stalls = 0;
    while (static_cast<int>(order.size()) < target && stalls < 200) {
      GridPoint from = order[std::uniform_int_distribution<std::size_t>(0, order.size() - 1)(rng)];
      GridPoint q = step(from, kDirs[std::uniform_int_distribution<int>(0, 3)(rng)]);
      if (q.x < 0 || q.y < 0 || q.x >= box || q.y >= box || cells.count(q)) {
        ++stalls;
        continue;
      }
      stalls = 0;
      cells.insert(q);
      order.push_back(q);
    }
    Polyomino p = Polyomino::from_pixels(order);
    if (p.size() < min_area || is_pinched(p)) continue;
    if (!opt.allow_holes && hole_count(p) > 0) continue;
    return p;
  }
}

}  // namespace stagecraft::fixtures
