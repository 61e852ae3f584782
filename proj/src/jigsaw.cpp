#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "jigsaw_planner.hpp"
#include "stagecraft/compilers.hpp"

namespace stagecraft {

bool RectPartition::is_tree() const {
  const std::size_t n = rects.size();
  std::size_t degree_sum = 0;
  for (const auto& a : adjacency) degree_sum += a.size();
  if (n == 0 || degree_sum / 2 + 1 != n) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adjacency[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return count == n;
}

RectPartition rect_partition(const Polyomino& p) {
  RectPartition part;
  // Open rectangles keyed by their run [x0, x1]; a run continues a rectangle from the row
  // above exactly when that row has the identical run.
  std::map<std::pair<int, int>, int> open;
  for (int y = 0; y < p.height(); ++y) {
    std::map<std::pair<int, int>, int> next;
    for (int x = 0; x < p.width();) {
      if (!p.contains({x, y})) {
        ++x;
        continue;
      }
      int x1 = x;
      while (p.contains({x1 + 1, y})) ++x1;
      auto key = std::make_pair(x, x1);
      if (auto it = open.find(key); it != open.end()) {
        part.rects[it->second].y1 = y;
        next[key] = it->second;
      } else {
        next[key] = static_cast<int>(part.rects.size());
        part.rects.push_back(Rect{x, y, x1, y});
      }
      x = x1 + 1;
    }
    open = std::move(next);
  }
  part.adjacency.resize(part.rects.size());
  for (std::size_t i = 0; i < part.rects.size(); ++i)
    for (std::size_t j = 0; j < part.rects.size(); ++j) {
      const Rect& a = part.rects[i];
      const Rect& b = part.rects[j];
      if (a.y1 + 1 == b.y0 && std::max(a.x0, b.x0) <= std::min(a.x1, b.x1)) {
        part.adjacency[i].push_back(static_cast<int>(j));
        part.adjacency[j].push_back(static_cast<int>(i));
      }
    }
  for (auto& a : part.adjacency) std::sort(a.begin(), a.end());
  return part;
}

namespace detail {

std::vector<Family> jigsaw_families(bool split_by_orientation) {
  auto triples = [](const char* letters) {
    std::vector<std::vector<std::string>> colors;
    for (const char* c = letters; *c; ++c) {
      std::vector<std::string> labels;
      for (int k = 1; k <= 3; ++k) labels.push_back(std::string(1, *c) + std::to_string(k));
      colors.push_back(std::move(labels));
    }
    return colors;
  };
  if (!split_by_orientation) return {Family{"jigsaw", triples("abc"), 1}};
  return {Family{"horizontal", triples("abc"), 1}, Family{"vertical", triples("def"), 1}};
}

namespace {

// Bounding-box lookup from pixel to its index in the region.
class RegionGrid {
 public:
  explicit RegionGrid(const std::vector<GridPoint>& px) {
    x0_ = y0_ = 1 << 30;
    int x1 = -(1 << 30), y1 = -(1 << 30);
    for (GridPoint p : px) {
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    w_ = x1 - x0_ + 1;
    h_ = y1 - y0_ + 1;
    idx_.assign(static_cast<std::size_t>(w_) * h_, -1);
    for (int i = 0; i < static_cast<int>(px.size()); ++i) idx_[offset(px[i])] = i;
  }
  int at(GridPoint p) const {
    if (p.x < x0_ || p.y < y0_ || p.x >= x0_ + w_ || p.y >= y0_ + h_) return -1;
    return idx_[offset(p)];
  }
  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int width() const { return w_; }
  int height() const { return h_; }

 private:
  std::size_t offset(GridPoint p) const { return static_cast<std::size_t>(p.y - y0_) * w_ + (p.x - x0_); }
  int x0_, y0_, w_, h_;
  std::vector<int> idx_;
};

// Coordinates along and across a cut line. For a horizontal line, u runs along x and v along y.
struct Axis {
  bool horizontal;
  GridPoint at(int u, int v) const { return horizontal ? GridPoint{u, v} : GridPoint{v, u}; }
  int u(GridPoint p) const { return horizontal ? p.x : p.y; }
  int v(GridPoint p) const { return horizontal ? p.y : p.x; }
  Dir across() const { return horizontal ? Dir::South : Dir::East; }  // towards larger v
};

Dir towards(GridPoint from, GridPoint to) {
  for (Dir d : kDirs)
    if (step(from, d) == to) return d;
  throw PlanError("pixels are not adjacent");
}

struct Candidate {
  Axis axis{true};
  int line = 0;               // the cut runs between v = line - 1 and v = line
  std::vector<char> in_a;     // membership of region pixels in piece A
  int a_size = 0;
  int worst = 0;              // larger piece
  std::vector<std::pair<int, int>> runs;  // [u0, u1] intervals along the line
};

// Marks the pixels reachable from `start` without leaving `allowed`. Returns the count.
int flood(const std::vector<GridPoint>& px, const RegionGrid& grid, int start, const std::vector<char>& allowed,
          std::vector<int>& label, int mark) {
  int count = 0;
  std::vector<int> stack{start};
  label[start] = mark;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    ++count;
    for (Dir d : kDirs) {
      int j = grid.at(step(px[i], d));
      if (j >= 0 && allowed[j] && label[j] < 0) {
        label[j] = mark;
        stack.push_back(j);
      }
    }
  }
  return count;
}

bool connected_subset(const std::vector<GridPoint>& px, const RegionGrid& grid, const std::vector<char>& member) {
  int first = -1, total = 0;
  for (int i = 0; i < static_cast<int>(px.size()); ++i)
    if (member[i]) {
      ++total;
      if (first < 0) first = i;
    }
  if (total == 0) return false;
  std::vector<int> label(px.size(), -1);
  return flood(px, grid, first, member, label, 0) == total;
}

std::vector<Candidate> enumerate(const std::vector<GridPoint>& px, const RegionGrid& grid) {
  const int n = static_cast<int>(px.size());
  std::vector<Candidate> out;
  for (bool horizontal : {true, false}) {
    Axis axis{horizontal};
    const int vmin = horizontal ? grid.y0() : grid.x0();
    const int vmax = vmin + (horizontal ? grid.height() : grid.width()) - 1;
    for (int line = vmin + 1; line <= vmax; ++line) {
      std::vector<char> side(n);
      for (int i = 0; i < n; ++i) side[i] = axis.v(px[i]) >= line;
      // Components of each side.
      std::vector<int> comp(n, -1);
      std::vector<int> comp_size;
      std::vector<char> comp_side;
      for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<char> allowed(n);
        for (int j = 0; j < n; ++j) allowed[j] = side[j] == side[i];
        comp_size.push_back(flood(px, grid, i, allowed, comp, static_cast<int>(comp_size.size())));
        comp_side.push_back(side[i]);
      }
      const int ncomp = static_cast<int>(comp_size.size());
      for (int c = 0; c < ncomp; ++c) {
        if (ncomp == 2 && comp_side[c]) continue;  // the same split as the other side
        Candidate cand;
        cand.axis = axis;
        cand.line = line;
        cand.in_a.assign(n, 0);
        for (int i = 0; i < n; ++i) cand.in_a[i] = comp[i] == c;
        cand.a_size = comp_size[c];
        if (ncomp > 2) {
          std::vector<char> rest(n);
          for (int i = 0; i < n; ++i) rest[i] = !cand.in_a[i];
          if (!connected_subset(px, grid, rest)) continue;
        }
        cand.worst = std::max(cand.a_size, n - cand.a_size);
        // Interface positions along the line.
        std::vector<int> us;
        const int v_a = comp_side[c] ? line : line - 1;
        const int v_b = comp_side[c] ? line - 1 : line;
        for (int i = 0; i < n; ++i) {
          if (!cand.in_a[i] || axis.v(px[i]) != v_a) continue;
          int j = grid.at(axis.at(axis.u(px[i]), v_b));
          if (j >= 0) us.push_back(axis.u(px[i]));
        }
        std::sort(us.begin(), us.end());
        for (int u : us) {
          if (!cand.runs.empty() && cand.runs.back().second + 1 == u) cand.runs.back().second = u;
          else cand.runs.push_back({u, u});
        }
        if (cand.runs.empty()) continue;
        out.push_back(std::move(cand));
      }
    }
  }
  return out;
}

// Keys every interface run of the candidate. Runs of up to three edges get distinct slots.
// Longer runs get a one-pixel tab at their middle: edges before the tab use slot 0, the wall
// facing them slot 0, the tab's end face slot 1, the far wall and the edges after it slot 2.
// Sliding one piece along the line to match a repeated slot then pushes the tab into the
// other piece. Returns false when some run has no room for a tab.
bool key_runs(const std::vector<GridPoint>& px, const RegionGrid& grid, Candidate& cand, int family,
              std::vector<Cut>& cuts) {
  const Axis& ax = cand.axis;
  auto member = [&](GridPoint p) -> int {  // 1 in A, 0 in B, -1 outside
    int i = grid.at(p);
    return i < 0 ? -1 : cand.in_a[i];
  };
  // Whether A lies on the small-v side of the line.
  bool a_low = false;
  for (int i = 0; i < static_cast<int>(px.size()); ++i)
    if (cand.in_a[i]) {
      a_low = ax.v(px[i]) < cand.line;
      break;
    }
  const int v_low = cand.line - 1, v_high = cand.line;

  for (auto [u0, u1] : cand.runs) {
    Cut cut;
    cut.family = family;
    const int len = u1 - u0 + 1;
    auto edge_between = [&](GridPoint p, GridPoint q, int slot) {
      // p and q adjacent, one in A and one in B; side 0 is A.
      if (member(p) == 1) cut.edges.push_back(CutEdge{p, towards(p, q), slot});
      else cut.edges.push_back(CutEdge{q, towards(q, p), slot});
    };
    if (len <= 3) {
      for (int u = u0; u <= u1; ++u) edge_between(ax.at(u, v_low), ax.at(u, v_high), u - u0);
      cuts.push_back(std::move(cut));
      continue;
    }
    std::vector<int> middles{u0 + (len - 1) / 2};
    if (len % 2 == 0) middles.push_back(u0 + len / 2);
    bool placed = false;
    // Pockets go on the low side whenever there is room, so the tabs along one line all face
    // the same way and never clash with each other.
    for (int pocket_low = 1; pocket_low >= 0 && !placed; --pocket_low) {
      const int pocket_in_a = pocket_low == static_cast<int>(a_low);
      const int v_pocket = pocket_low ? v_low : v_high;
      const int v_behind = pocket_low ? v_low - 1 : v_high + 1;
      for (int c : middles) {
        bool room = true;
        for (int u = c - 1; u <= c + 1 && room; ++u)
          for (int v : {v_pocket, v_behind})
            if (member(ax.at(u, v)) != pocket_in_a) room = false;
        if (!room) continue;
        const GridPoint tab = ax.at(c, v_pocket);
        cand.in_a[grid.at(tab)] = pocket_in_a ? 0 : 1;
        for (int u = u0; u <= u1; ++u)
          if (u != c) edge_between(ax.at(u, v_low), ax.at(u, v_high), u < c ? 0 : 2);
        edge_between(tab, ax.at(c - 1, v_pocket), 0);
        edge_between(tab, ax.at(c, v_behind), 1);
        edge_between(tab, ax.at(c + 1, v_pocket), 2);
        placed = true;
        break;
      }
    }
    if (!placed) return false;
    cuts.push_back(std::move(cut));
  }
  return true;
}

}  // namespace

int JigsawPlanner::build(std::vector<GridPoint> region) { return build(std::move(region), {}); }

// Colors the cuts of one split in order. A cut may not take the color of a face already open on
// the region (or on an earlier cut of this split) that shares a slot and points the opposite way,
// since every bin below would then hold two faces able to bond out of place. A cut whose edges
// all carry different slots stays keyed under any renaming of its slots, so those are tried too.
bool JigsawPlanner::color_cuts(std::vector<Cut>& cuts, std::vector<OpenFace> open) const {
  for (Cut& cut : cuts) {
    const int ncolors = static_cast<int>(plan_.families()[cut.family].colors.size());
    std::set<std::tuple<int, int, int>> blocked;  // (color, slot, direction a new face must avoid)
    for (const OpenFace& f : open)
      if (f.family == cut.family)
        blocked.insert({f.color, f.slot, static_cast<int>(opposite(static_cast<Dir>(f.dir)))});

    std::set<int> slots;
    for (const CutEdge& e : cut.edges) slots.insert(e.slot);
    std::vector<std::array<int, 3>> renamings{{0, 1, 2}};
    if (slots.size() == cut.edges.size()) {
      std::array<int, 3> r{0, 1, 2};
      while (std::next_permutation(r.begin(), r.end())) renamings.push_back(r);
    }
    bool done = false;
    for (const auto& rename : renamings) {
      for (int color = 0; color < ncolors && !done; ++color) {
        bool clash = false;
        for (const CutEdge& e : cut.edges) {
          const int slot = rename[e.slot];
          if (blocked.count({color, slot, static_cast<int>(e.d)}) ||
              blocked.count({color, slot, static_cast<int>(opposite(e.d))})) {
            clash = true;
            break;
          }
        }
        if (clash) continue;
        cut.fixed_color = color;
        for (CutEdge& e : cut.edges) {
          e.slot = rename[e.slot];
          open.push_back({e.p, static_cast<int>(e.d), e.slot, cut.family, color});
          open.push_back({step(e.p, e.d), static_cast<int>(opposite(e.d)), e.slot, cut.family, color});
        }
        done = true;
      }
      if (done) break;
    }
    if (!done) return false;
  }
  return true;
}

int JigsawPlanner::build(std::vector<GridPoint> region, const std::vector<OpenFace>& open) {
  std::sort(region.begin(), region.end());
  if (region.empty()) throw PlanError("empty region");
  if (region.size() == 1) return plan_.leaf(region.front());
  RegionGrid grid(region);
  std::vector<Candidate> cands = enumerate(region, grid);
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    const bool a_many = a.runs.size() > 3, b_many = b.runs.size() > 3;
    return std::make_tuple(a_many, a.worst, a.runs.size()) < std::make_tuple(b_many, b.worst, b.runs.size());
  });
  for (Candidate& cand : cands) {
    if (cand.runs.size() > 3) break;
    std::vector<Cut> cuts;
    if (!key_runs(region, grid, cand, cand.axis.horizontal ? hfam_ : vfam_, cuts)) continue;
    std::vector<GridPoint> a, b;
    for (std::size_t i = 0; i < region.size(); ++i) (cand.in_a[i] ? a : b).push_back(region[i]);
    if (a.empty() || b.empty() || !is_connected(a) || !is_connected(b)) continue;
    if (!color_cuts(cuts, open)) continue;

    std::vector<OpenFace> open_a, open_b;
    for (const OpenFace& f : open) (cand.in_a[grid.at(f.p)] ? open_a : open_b).push_back(f);
    for (const Cut& cut : cuts)
      for (const CutEdge& e : cut.edges) {
        open_a.push_back({e.p, static_cast<int>(e.d), e.slot, cut.family, cut.fixed_color});
        open_b.push_back({step(e.p, e.d), static_cast<int>(opposite(e.d)), e.slot, cut.family, cut.fixed_color});
      }
    int na = build(std::move(a), open_a);
    int nb = build(std::move(b), open_b);
    return plan_.merge(na, nb, std::move(cuts));
  }
  throw PlanError("no keyed straight-line split for the piece\n" + render_ascii(Polyomino::from_pixels(region)));
}

}  // namespace detail

namespace {

std::string hole_message(int holes) {
  return "input has " + std::to_string(holes) + (holes == 1 ? " hole" : " holes");
}

}  // namespace

StagedSystem compile_rect_with_tabs(int w, int h, const std::vector<RectFeature>& features) {
  if (w < 2 || h < 2 || w % 2 || h % 2) throw PreconditionError("rectangle sides must be even and at least 2");
  std::map<Dir, int> per_side;
  PointSet pixels;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) pixels.insert({x, y});
  for (const RectFeature& f : features) {
    if (f.length < 1 || f.length > 2) throw PreconditionError("tabs and pockets are 1 or 2 pixels long");
    if (++per_side[f.side] > 2) throw PreconditionError("at most two features per side");
    const int extent = (f.side == Dir::North || f.side == Dir::South) ? w : h;
    if (f.offset < 0 || f.offset + f.length > extent) throw PreconditionError("feature runs past the side");
    for (int k = f.offset; k < f.offset + f.length; ++k) {
      switch (f.side) {
        case Dir::North: pixels.insert({k, -1}); break;
        case Dir::West: pixels.insert({-1, k}); break;
        case Dir::South: pixels.erase({k, h - 1}); break;
        case Dir::East: pixels.erase({w - 1, k}); break;
      }
    }
  }
  std::vector<GridPoint> px(pixels.begin(), pixels.end());
  if (!is_connected(px) || hole_count(pixels) > 0) throw PreconditionError("features disconnect the rectangle");
  Polyomino shape = Polyomino::from_pixels(px);

  StagedSystem sys;
  sys.tiles = TileSystem(1);
  AssemblyPlan plan(detail::jigsaw_families(false));
  detail::JigsawPlanner planner(plan, 0, 0);
  int root = planner.build(shape.pixels());
  plan.solve(root);
  PlanBuilder builder(sys);
  builder.finish(plan.emit(root, sys, builder));
  sys.target = TargetSpec{shape, 1};
  sys.construction = "rect-tabs-t1";
  sys.declared = {{"glues", 9}};
  return sys;
}

StagedSystem compile_holefree_t1(const Polyomino& p, bool pre_scaled) {
  if (int holes = hole_count(p); holes > 0) throw PreconditionError(hole_message(holes));
  if (pre_scaled && vertical_thickness(p) < 4)
    throw PreconditionError("vertical thickness " + std::to_string(vertical_thickness(p)) + " is below 4");
  Polyomino q = pre_scaled ? p : scale(p, 4);

  StagedSystem sys;
  sys.tiles = TileSystem(1);
  AssemblyPlan plan(detail::jigsaw_families(true));
  detail::JigsawPlanner planner(plan, 0, 1);
  int root = planner.build(q.pixels());
  plan.solve(root);
  PlanBuilder builder(sys);
  builder.finish(plan.emit(root, sys, builder));
  sys.target = TargetSpec{p, pre_scaled ? 1 : 4};
  sys.construction = pre_scaled ? "holefree-t1-thick" : "holefree-t1";
  sys.declared = {{"glues", 18}};
  return sys;
}

}  // namespace stagecraft
