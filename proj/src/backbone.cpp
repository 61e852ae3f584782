#include <algorithm>

#include "stagecraft/compilers.hpp"

namespace stagecraft {

namespace {

void require_three_scaled(const Polyomino& p) {
  if (p.width() % 3 != 0 || p.height() % 3 != 0) throw PreconditionError("shape is not 3-scaled");
  for (int by = 0; by < p.height(); by += 3)
    for (int bx = 0; bx < p.width(); bx += 3) {
      int count = 0;
      for (int dy = 0; dy < 3; ++dy)
        for (int dx = 0; dx < 3; ++dx) count += p.contains({bx + dx, by + dy});
      if (count != 0 && count != 9) throw PreconditionError("shape is not 3-scaled");
    }
}

// Leftmost strip among the horizontal strips of extreme row.
const Strip* pick_strip(const BoundaryComponent& c, bool topmost) {
  const Strip* best = nullptr;
  for (const Strip& s : c.strips) {
    if (s.orientation != Orientation::Horizontal || s.pixels.size() < 2) continue;
    if (!best) {
      best = &s;
      continue;
    }
    int y = s.first().y, by = best->first().y;
    bool better = topmost ? y < by : y > by;
    if (better || (y == by && s.first().x < best->first().x)) best = &s;
  }
  return best;
}

}  // namespace

Backbone build_backbone(const Polyomino& scaled) {
  require_three_scaled(scaled);
  if (is_pinched(scaled)) throw PreconditionError("shape has boundaries touching at a corner");
  Backbone b;
  b.scaled = scaled;
  PointSet boundary;
  for (GridPoint p : boundary_pixels(scaled)) boundary.insert(p);

  PointSet in_backbone;
  for (const BoundaryComponent& comp : boundary_components(scaled)) {
    const bool outside = comp.kind == ComponentKind::Outside;
    const Strip* cut = pick_strip(comp, !outside);
    if (!cut) throw GeometryError("boundary component without a horizontal strip");
    std::vector<GridPoint> removed;
    if (outside) removed.assign(cut->pixels.begin() + 1, cut->pixels.end() - 1);
    else removed = cut->pixels;
    std::sort(removed.begin(), removed.end());
    std::vector<GridPoint> path;
    for (GridPoint p : comp.pixels)
      if (!std::binary_search(removed.begin(), removed.end(), p)) {
        path.push_back(p);
        in_backbone.insert(p);
      }
    b.paths.push_back(std::move(path));
    b.cut_strips.push_back(std::move(removed));

    if (outside) continue;
    GridPoint start = comp.pixels.front();
    for (GridPoint p : comp.pixels)
      if (p.y > start.y || (p.y == start.y && p.x < start.x)) start = p;
    std::vector<GridPoint> connector;
    GridPoint q{start.x - 1, start.y};
    while (scaled.contains(q) && !boundary.count(q)) {
      connector.push_back(q);
      q.x -= 1;
    }
    if (!scaled.contains(q)) throw GeometryError("connector left the shape");
    b.connectors.push_back(std::move(connector));
  }
  for (std::size_t i = 0; i < b.connectors.size(); ++i) {
    const auto& con = b.connectors[i];
    if (con.empty()) throw GeometryError("hole boundary touches another boundary");
    for (GridPoint p : con) in_backbone.insert(p);
    if (!in_backbone.count(GridPoint{con.back().x - 1, con.back().y}))
      throw GeometryError("connector ends at a removed cut pixel");
  }
  b.pixels.assign(in_backbone.begin(), in_backbone.end());
  std::sort(b.pixels.begin(), b.pixels.end());

  for (GridPoint p : b.pixels) {
    int deg = 0;
    for (Dir d : kDirs) {
      GridPoint q = step(p, d);
      if (in_backbone.count(q)) ++deg;
      else if (scaled.contains(q)) b.inside_edges.push_back({p, d});
    }
    if (deg >= 3) b.degree3.push_back(p);
  }

  std::size_t edges = 0;
  for (GridPoint p : b.pixels)
    for (Dir d : {Dir::East, Dir::South}) edges += in_backbone.count(step(p, d));
  if (!is_connected(b.pixels) || edges + 1 != b.pixels.size())
    throw GeometryError("backbone is not a tree");
  return b;
}

}  // namespace stagecraft
