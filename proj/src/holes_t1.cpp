#include <algorithm>

#include "jigsaw_planner.hpp"
#include "stagecraft/compilers.hpp"

namespace stagecraft {

namespace {

constexpr const char* kRed = "red";
constexpr const char* kBlue = "blue";

const char* marking(Dir s2_side) { return (s2_side == Dir::North || s2_side == Dir::West) ? kRed : kBlue; }

void check_partition(const S1S2Partition& part) {
  if (part.s2.empty() || !is_connected(part.s2)) throw GeometryError("S2 is not connected");
  Polyomino s2 = Polyomino::from_pixels(part.s2);
  if (hole_count(s2) != 0) throw GeometryError("S2 has holes");
  if (vertical_thickness(s2) < 4) throw GeometryError("S2 is thinner than 4");
  if (!is_connected(part.s1)) throw GeometryError("S1 is not connected");
  // Following parents from any ring must reach the outside ring without revisiting a ring.
  const int rings = static_cast<int>(part.rings.size());
  for (int i = 1; i < rings; ++i) {
    int r = i, steps = 0;
    while (r != 0) {
      r = part.bridge_parent.at(r - 1);
      if (r < 0 || r >= rings || ++steps > rings) throw GeometryError("bridges do not form a tree rooted outside");
    }
  }
}

}  // namespace

S1S2Partition partition_s1_s2(const Polyomino& p) {
  if (is_pinched(p)) throw PreconditionError("shape has boundaries touching at a corner");
  S1S2Partition part;
  part.scaled = scale(p, 6);
  const Polyomino& q = part.scaled;

  std::vector<BoundaryComponent> comps = boundary_components(q);
  std::vector<std::vector<GridPoint>> inside;
  for (BoundaryComponent& c : comps) {
    if (c.kind == ComponentKind::Outside) part.rings.insert(part.rings.begin(), c.pixels);
    else inside.push_back(c.pixels);
  }
  // Bridges only ever hit rings (or bridges) further left, so building them from the left
  // means every pixel a bridge can meet already exists.
  auto start_of = [](const std::vector<GridPoint>& ring) {
    GridPoint s = ring.front();
    for (GridPoint r : ring)
      if (r.x < s.x || (r.x == s.x && r.y > s.y)) s = r;
    return s;
  };
  std::sort(inside.begin(), inside.end(),
            [&](const auto& a, const auto& b) { return start_of(a) < start_of(b) || (!(start_of(b) < start_of(a)) && a < b); });
  for (auto& ring : inside) part.rings.push_back(std::move(ring));

  PointMap<int> owner;  // S1 pixel -> ring it belongs to or whose bridge it is on
  for (int i = 0; i < static_cast<int>(part.rings.size()); ++i)
    for (GridPoint r : part.rings[i]) owner.emplace(r, i);
  for (int i = 1; i < static_cast<int>(part.rings.size()); ++i) {
    GridPoint s = start_of(part.rings[i]);
    std::vector<GridPoint> bridge;
    GridPoint cur{s.x - 1, s.y};
    while (q.contains(cur) && !owner.count(cur)) {
      bridge.push_back(cur);
      cur.x -= 1;
    }
    if (!q.contains(cur)) throw GeometryError("bridge left the shape");
    if (bridge.empty()) throw GeometryError("hole boundary touches another boundary");
    part.bridge_parent.push_back(owner.at(cur));
    for (GridPoint b : bridge) owner.emplace(b, i);
    part.bridges.push_back(std::move(bridge));
  }

  for (GridPoint x : q.pixels()) (owner.count(x) ? part.s1 : part.s2).push_back(x);
  std::sort(part.s1.begin(), part.s1.end());
  std::sort(part.s2.begin(), part.s2.end());
  for (GridPoint x : part.s2)
    for (Dir d : kDirs)
      if (owner.count(step(x, d))) part.s2_faces.push_back({x, d});
  return part;
}

StagedSystem compile_holes_t1(const Polyomino& p) {
  S1S2Partition part = partition_s1_s2(p);
  check_partition(part);

  StagedSystem sys;
  sys.tiles = TileSystem(1);
  sys.tiles.add_glue(kRed, 1);
  sys.tiles.add_glue(kBlue, 1);
  PlanBuilder builder(sys);

  // Each half is planned on its own; the halves share the jigsaw labels because no bin ever
  // holds pieces of both until the last one, where only red and blue faces remain open.
  auto build_half = [&](const std::vector<GridPoint>& pixels, bool is_s2) {
    AssemblyPlan plan(detail::jigsaw_families(true));
    for (auto [x, d] : part.s2_faces) {
      if (is_s2) plan.preset(x, d, marking(d), 1);
      else plan.preset(step(x, d), opposite(d), marking(d), 1);
    }
    detail::JigsawPlanner planner(plan, 0, 1);
    int root = planner.build(pixels);
    plan.solve(root);
    return plan.emit(root, sys, builder);
  };
  BinRef s1 = build_half(part.s1, false);
  BinRef s2 = build_half(part.s2, true);
  builder.finish(builder.mix({PlanBuilder::Input::of_bin(s1), PlanBuilder::Input::of_bin(s2)}));

  sys.target = TargetSpec{p, 6};
  sys.construction = "holes-t1";
  sys.declared = {{"glues", 20}};
  return sys;
}

}  // namespace stagecraft
