#include <algorithm>
#include <functional>
#include <set>

#include "stagecraft/assembly_plan.hpp"
#include "stagecraft/compilers.hpp"

namespace stagecraft {

namespace {

FloodTile make(int c, int r, const char* n, const char* e, const char* s, const char* w) {
  return FloodTile{c, r, {n, e, s, w}};
}

int residue(int v) { return ((v + 1) % 3 + 3) % 3; }

constexpr int kNS = 0;
constexpr int kEW = 1;

std::vector<Family> structural_families() {
  std::vector<std::vector<std::string>> colors{{"g1"}, {"g2"}, {"g3"}};
  return {Family{"ns", colors, 2}, Family{"ew", colors, 2}};
}

// Path order starting at the smaller end.
std::vector<GridPoint> order_path(const std::vector<GridPoint>& pixels) {
  PixelGraph g = PixelGraph::from_pixels(pixels);
  int start = -1;
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v)
    if (g.adjacency[v].size() <= 1) {
      start = v;
      break;
    }
  if (start < 0) throw GeometryError("expected a path");
  std::vector<GridPoint> seq{g.nodes[start]};
  int prev = -1, cur = start;
  while (seq.size() < g.nodes.size()) {
    int next = -1;
    for (int w : g.adjacency[cur])
      if (w != prev) next = w;
    if (next < 0) throw GeometryError("expected a path");
    prev = cur;
    cur = next;
    seq.push_back(g.nodes[cur]);
  }
  return seq;
}

// Decomposes the backbone tree into a merge tree whose cuts are single backbone edges.
class BackboneDecomposer {
 public:
  explicit BackboneDecomposer(AssemblyPlan& plan) : plan_(plan) {}

  // Halves the path repeatedly. Needs a path.
  int fast(const std::vector<GridPoint>& pixels) {
    std::vector<GridPoint> seq = order_path(pixels);
    return halve(seq, 0, static_cast<int>(seq.size()));
  }

  // Splits at a median pixel of degree three while one exists, then at the median corner of
  // the remaining paths, and finally halves straight strips.
  int general(const std::vector<GridPoint>& pixels) {
    if (pixels.size() == 1) return plan_.leaf(pixels.front());
    PixelGraph g = PixelGraph::from_pixels(pixels);
    std::vector<int> branch;
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v)
      if (g.adjacency[v].size() >= 3) branch.push_back(v);
    if (!branch.empty()) return split_at(g, pick_branch(g, branch));

    std::vector<GridPoint> seq = order_path(pixels);
    std::vector<int> corners;
    for (int i = 1; i + 1 < static_cast<int>(seq.size()); ++i) {
      GridPoint a = seq[i - 1], c = seq[i + 1];
      if (a.x != c.x && a.y != c.y) corners.push_back(i);
    }
    if (!corners.empty()) return split_at(g, g.index_of(seq[corners[(corners.size() - 1) / 2]]));
    return halve_general(seq);
  }

 private:
  int halve(const std::vector<GridPoint>& seq, int l, int r) {
    if (r - l == 1) return plan_.leaf(seq[l]);
    int m = (l + r) / 2;
    int a = halve(seq, l, m);
    int b = halve(seq, m, r);
    return plan_.merge_single_edges(a, b, kNS, kEW);
  }

  int halve_general(const std::vector<GridPoint>& seq) {
    std::size_t m = seq.size() / 2;
    int a = general(std::vector<GridPoint>(seq.begin(), seq.begin() + m));
    int b = general(std::vector<GridPoint>(seq.begin() + m, seq.end()));
    return plan_.merge_single_edges(a, b, kNS, kEW);
  }

  // Degree-three pixel whose removal leaves the fewest degree-three pixels in one component;
  // ties go to the more balanced split in pixels, then to the smaller pixel.
  int pick_branch(const PixelGraph& g, const std::vector<int>& branch) {
    std::set<int> is_branch(branch.begin(), branch.end());
    int best = -1;
    std::pair<int, int> best_key{1 << 30, 1 << 30};
    for (int v : branch) {
      int worst_branch = 0, worst_size = 0;
      for (const auto& comp : components_without(g, v)) {
        int nb = 0;
        for (int u : comp) nb += is_branch.count(u);
        worst_branch = std::max(worst_branch, nb);
        worst_size = std::max(worst_size, static_cast<int>(comp.size()));
      }
      std::pair<int, int> key{worst_branch, worst_size};
      if (key < best_key) {
        best_key = key;
        best = v;
      }
    }
    return best;
  }

  static std::vector<std::vector<int>> components_without(const PixelGraph& g, int v) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.nodes.size(), 0);
    seen[v] = 1;
    for (int w0 : g.adjacency[v]) {
      if (seen[w0]) continue;
      std::vector<int> comp{w0};
      seen[w0] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (int w : g.adjacency[comp[i]])
          if (!seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
      comps.push_back(std::move(comp));
    }
    return comps;
  }

  // Removes pixel v, builds every remaining component and attaches them to v one at a time,
  // components joined through a horizontal edge first.
  int split_at(const PixelGraph& g, int v) {
    GridPoint p = g.nodes[v];
    struct Part {
      bool vertical;
      GridPoint first;
      std::vector<GridPoint> pixels;
    };
    std::vector<Part> parts;
    for (const auto& comp : components_without(g, v)) {
      Part part;
      for (int u : comp) part.pixels.push_back(g.nodes[u]);
      std::sort(part.pixels.begin(), part.pixels.end());
      part.first = part.pixels.front();
      part.vertical = true;
      for (int u : comp)
        if (g.nodes[u].y == p.y && std::abs(g.nodes[u].x - p.x) == 1) part.vertical = false;
      parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
      if (a.vertical != b.vertical) return !a.vertical;
      return a.first < b.first;
    });
    int cur = plan_.leaf(p);
    for (const Part& part : parts) cur = plan_.merge_single_edges(cur, general(part.pixels), kNS, kEW);
    return cur;
  }

  AssemblyPlan& plan_;
};

const std::vector<FloodTile>& chart(const PolyT2Options& opt) {
  static const std::vector<FloodTile> published = flooding_tileset();
  static const std::vector<FloodTile> unique = unique_flooding_tileset();
  return opt.published_chart ? published : unique;
}

// Builds, colors and emits the backbone plan. Returns the bin holding the backbone.
BinRef emit_backbone(const Backbone& b, const PolyT2Options& opt, StagedSystem& sys, PlanBuilder& builder) {
  const auto& tiles = chart(opt);
  AssemblyPlan plan(structural_families());
  for (auto [p, d] : b.inside_edges) {
    const FloodTile& t = flood_tile_at(tiles, step(p, d));
    plan.preset(p, d, t.faces[static_cast<int>(opposite(d))], 1);
  }
  const bool path_only = b.degree3.empty();
  BackboneDecomposer dec(plan);
  int root = (path_only && !opt.force_general) ? dec.fast(b.pixels) : dec.general(b.pixels);
  plan.solve(root);
  return plan.emit(root, sys, builder);
}

void declare_alphabet(StagedSystem& sys, const PolyT2Options& opt) {
  for (const char* g : {"g1", "g2", "g3"}) sys.tiles.add_glue(g, 2);
  std::set<std::string> flood;
  for (const FloodTile& t : chart(opt))
    for (const std::string& f : t.faces) flood.insert(f);
  for (const std::string& f : flood) sys.tiles.add_glue(f, 1);
}

}  // namespace

std::vector<FloodTile> flooding_tileset() {
  return {
      make(1, 1, "g6", "g4", "g4", "g6"), make(1, 2, "g4", "g4", "g5", "g6"), make(1, 0, "g5", "g4", "g6", "g6"),
      make(2, 1, "g6", "g5", "g4", "g4"), make(2, 2, "g4", "g5", "g5", "g4"), make(2, 0, "g5", "g5", "g6", "g4"),
      make(0, 1, "g6", "g6", "g4", "g5"), make(0, 2, "g4", "g6", "g5", "g5"), make(0, 0, "g5", "g6", "g6", "g5"),
  };
}

std::vector<FloodTile> unique_flooding_tileset() {
  return {
      make(0, 0, "g7", "g6", "g7", "g6"), make(0, 1, "g7", "g4", "g5", "g5"), make(0, 2, "g5", "g5", "g7", "g4"),
      make(1, 0, "g6", "g7", "g4", "g6"), make(1, 1, "g4", "g7", "g5", "g4"), make(1, 2, "g5", "g7", "g6", "g5"),
      make(2, 0, "g4", "g6", "g6", "g7"), make(2, 1, "g6", "g5", "g5", "g7"), make(2, 2, "g5", "g4", "g4", "g7"),
  };
}

const FloodTile& flood_tile_at(const std::vector<FloodTile>& set, GridPoint p) {
  const int c = residue(p.x), r = residue(p.y);
  for (const FloodTile& t : set)
    if (t.c == c && t.r == r) return t;
  throw GeometryError("flooding tile set lacks a residue class");
}

StagedSystem compile_backbone_system(const Backbone& b, const PolyT2Options& opt) {
  StagedSystem sys;
  sys.tiles = TileSystem(2);
  declare_alphabet(sys, opt);
  PlanBuilder builder(sys);
  builder.finish(emit_backbone(b, opt, sys, builder));
  sys.target = TargetSpec{Polyomino::from_pixels(b.pixels), 1};
  sys.construction = "backbone";
  sys.declared = {{"glues", sys.tiles.glue_count()}};
  return sys;
}

StagedSystem compile_polyomino_t2(const Polyomino& p, const PolyT2Options& opt) {
  if (is_pinched(p)) throw PreconditionError("shape has boundaries touching at a corner");
  Polyomino scaled = scale(p, 3);
  Backbone b = build_backbone(scaled);
  StagedSystem sys;
  sys.tiles = TileSystem(2);
  declare_alphabet(sys, opt);
  PlanBuilder builder(sys);
  BinRef backbone = emit_backbone(b, opt, sys, builder);

  std::vector<PlanBuilder::Input> inputs{PlanBuilder::Input::of_bin(backbone)};
  std::set<std::pair<int, int>> used;
  for (GridPoint q : scaled.pixels())
    if (!std::binary_search(b.pixels.begin(), b.pixels.end(), q)) {
      const FloodTile& t = flood_tile_at(chart(opt), q);
      used.insert({t.c, t.r});
    }
  for (const FloodTile& t : chart(opt)) {
    if (!used.count({t.c, t.r})) continue;
    std::array<GlueId, 4> faces{};
    for (int d = 0; d < 4; ++d) faces[d] = sys.tiles.glue(t.faces[d]);
    int id = sys.tiles.add_tile("flood" + std::to_string(t.c) + std::to_string(t.r), faces);
    inputs.push_back(PlanBuilder::Input::of_tile(id));
  }
  builder.finish(builder.mix(inputs));
  sys.target = TargetSpec{p, 3};
  sys.construction = "poly-t2";
  sys.declared = {{"glues", sys.tiles.glue_count()}};
  return sys;
}

}  // namespace stagecraft
