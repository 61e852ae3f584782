#include "stagecraft/assembly_plan.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace stagecraft {

BinRef PlanBuilder::add_bin(int stage, std::vector<BinRef> from, std::vector<int> adds) {
  if (stage < 1) throw PlanError("bins start at stage 1");
  std::sort(from.begin(), from.end());
  from.erase(std::unique(from.begin(), from.end()), from.end());
  std::sort(adds.begin(), adds.end());
  adds.erase(std::unique(adds.begin(), adds.end()), adds.end());
  for (const BinRef& r : from)
    if (r.stage != stage - 1) throw PlanError("bin input does not come from the previous stage");
  auto key = std::make_tuple(stage, from, adds);
  if (auto it = dedupe_.find(key); it != dedupe_.end()) return it->second;
  while (sys_.stage_count() < stage) sys_.stages.emplace_back();
  auto& bins = sys_.stages[stage - 1];
  BinRef ref{stage, static_cast<int>(bins.size())};
  bins.push_back(BinSpec{std::move(adds), std::move(from)});
  dedupe_.emplace(std::move(key), ref);
  return ref;
}

BinRef PlanBuilder::carry(BinRef r, int to_stage) {
  if (to_stage < r.stage) throw PlanError("cannot carry a bin backwards");
  while (r.stage < to_stage) r = add_bin(r.stage + 1, {r}, {});
  return r;
}

BinRef PlanBuilder::mix(const std::vector<Input>& inputs, int at_least) {
  int stage = at_least;
  for (const Input& in : inputs) stage = std::max(stage, in.ready() + 1);
  std::vector<BinRef> from;
  std::vector<int> adds;
  for (const Input& in : inputs) {
    if (in.bin) from.push_back(carry(*in.bin, stage - 1));
    else adds.push_back(in.tile);
  }
  return add_bin(stage, std::move(from), std::move(adds));
}

void PlanBuilder::finish(BinRef r) {
  if (r.stage != sys_.stage_count()) throw PlanError("output bin is not in the last stage");
  sys_.output = {r};
}

int AssemblyPlan::leaf(GridPoint p) {
  PlanNode n;
  n.pixels = {p};
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

namespace {

bool contains_sorted(const std::vector<GridPoint>& v, GridPoint p) { return std::binary_search(v.begin(), v.end(), p); }

}  // namespace

int AssemblyPlan::merge(int a, int b, std::vector<Cut> cuts) {
  if (a == b || nodes_.at(a).parent >= 0 || nodes_.at(b).parent >= 0)
    throw PlanError("merge inputs must be two distinct unmerged pieces");
  const auto& pa = nodes_[a].pixels;
  const auto& pb = nodes_[b].pixels;
  std::set<std::pair<std::uint64_t, int>> covered;  // (pixel, dir) normalized to East/South
  auto norm = [](GridPoint p, Dir d) {
    if (d == Dir::West || d == Dir::North) {
      p = step(p, d);
      d = opposite(d);
    }
    return std::make_pair(pack(p), static_cast<int>(d));
  };
  for (const Cut& c : cuts) {
    if (c.family < 0 || c.family >= static_cast<int>(families_.size())) throw PlanError("unknown cut family");
    if (c.edges.empty()) throw PlanError("empty cut");
    for (const CutEdge& e : c.edges) {
      GridPoint q = step(e.p, e.d);
      bool ok = (contains_sorted(pa, e.p) && contains_sorted(pb, q)) || (contains_sorted(pb, e.p) && contains_sorted(pa, q));
      if (!ok) throw PlanError("cut edge does not separate the merged pieces");
      if (!covered.insert(norm(e.p, e.d)).second) throw PlanError("adjacency covered twice");
    }
  }
  std::size_t adjacent = 0;
  for (GridPoint p : pa)
    for (Dir d : kDirs)
      if (contains_sorted(pb, step(p, d))) {
        ++adjacent;
        if (!covered.count(norm(p, d))) throw PlanError("adjacency between merged pieces left without a cut");
      }
  if (adjacent == 0) throw PlanError("merged pieces are not adjacent");
  PlanNode n;
  n.pixels.reserve(pa.size() + pb.size());
  std::merge(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(n.pixels));
  n.child[0] = a;
  n.child[1] = b;
  for (Cut& c : cuts) {
    n.cuts.push_back(static_cast<int>(cuts_.size()));
    cuts_.push_back(std::move(c));
  }
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  nodes_[a].parent = id;
  nodes_[b].parent = id;
  return id;
}

int AssemblyPlan::merge_single_edges(int a, int b, int ns_family, int ew_family) {
  std::vector<Cut> cuts;
  const auto& pb = nodes_.at(b).pixels;
  for (GridPoint p : nodes_.at(a).pixels)
    for (Dir d : kDirs) {
      GridPoint q = step(p, d);
      if (!contains_sorted(pb, q)) continue;
      CutEdge e{p, d, 0};
      if (d == Dir::West || d == Dir::North) e = CutEdge{q, opposite(d), 0};
      Cut c;
      c.family = (e.d == Dir::South) ? ns_family : ew_family;
      c.edges.push_back(e);
      cuts.push_back(std::move(c));
    }
  return merge(a, b, std::move(cuts));
}

void AssemblyPlan::preset(GridPoint p, Dir d, const std::string& label, int strength) {
  presets_[p][static_cast<int>(d)] = {label, strength};
}

void AssemblyPlan::solve(int root) {
  const int ncuts = static_cast<int>(cuts_.size());
  colors_.assign(ncuts, -1);
  PointMap<int> leaf_of;
  std::vector<int> cut_node(ncuts, -1);
  std::function<void(int)> index = [&](int v) {
    const PlanNode& n = nodes_[v];
    if (n.leaf()) {
      leaf_of[n.pixels.front()] = v;
      return;
    }
    for (int c : n.cuts) cut_node[c] = v;
    index(n.child[0]);
    index(n.child[1]);
  };
  index(root);

  // A face left unbonded on a piece: cut, side, slot and the direction the face points in.
  struct Exposure {
    int cut, side, slot, dir;
    auto key() const { return std::tie(cut, side, slot, dir); }
    bool operator<(const Exposure& o) const { return key() < o.key(); }
    bool operator==(const Exposure& o) const { return key() == o.key(); }
  };
  std::vector<std::vector<Exposure>> exposures(nodes_.size());
  for (int c = 0; c < ncuts; ++c) {
    if (cut_node[c] < 0) continue;
    for (const CutEdge& e : cuts_[c].edges) {
      GridPoint ends[2] = {e.p, step(e.p, e.d)};
      int dirs[2] = {static_cast<int>(e.d), static_cast<int>(opposite(e.d))};
      for (int side = 0; side < 2; ++side)
        for (int v = leaf_of.at(ends[side]); v != cut_node[c]; v = nodes_[v].parent)
          exposures[v].push_back({c, side, e.slot, dirs[side]});
    }
  }
  for (auto& e : exposures) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }

  // Faces of one side of one cut must not be able to bond with each other.
  for (const auto& list : exposures)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size() && list[j].cut == list[i].cut && list[j].side == list[i].side; ++j)
        if (list[j].slot == list[i].slot && list[j].dir == static_cast<int>(opposite(static_cast<Dir>(list[i].dir))))
          throw PlanError("one side of a cut exposes two faces that would bond");

  // In the bin of node v, two distinct cuts of one family conflict when some exposed faces of
  // theirs share a slot and point in opposite directions: equal colors would let them bond.
  std::vector<std::set<int>> conflicts(ncuts);
  for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
    const PlanNode& n = nodes_[v];
    if (n.leaf()) continue;
    std::map<std::tuple<int, int, int>, std::vector<int>> bucket;  // (family, slot, dir) -> cuts
    for (int ch = 0; ch < 2; ++ch)
      for (const Exposure& x : exposures[n.child[ch]])
        bucket[{cuts_[x.cut].family, x.slot, x.dir}].push_back(x.cut);
    for (auto& [key, list] : bucket) {
      auto [fam, slot, dir] = key;
      if (dir >= 2) continue;  // each opposite pair is handled once, from North or East
      auto it = bucket.find({fam, slot, static_cast<int>(opposite(static_cast<Dir>(dir)))});
      if (it == bucket.end()) continue;
      for (int c1 : list)
        for (int c2 : it->second)
          if (c1 != c2) {
            conflicts[c1].insert(c2);
            conflicts[c2].insert(c1);
          }
    }
  }

  // Backtracking DSatur per family.
  std::vector<int> order;
  for (int c = 0; c < ncuts; ++c)
    if (cut_node[c] >= 0) order.push_back(c);
  for (int c : order)
    if (cuts_[c].fixed_color >= 0) colors_[c] = cuts_[c].fixed_color;
  for (int c : order)
    for (int o : conflicts[c])
      if (colors_[c] >= 0 && colors_[c] == colors_[o] && cuts_[c].fixed_color >= 0 && cuts_[o].fixed_color >= 0)
        throw PlanError("two conflicting cuts share a pinned color");

  long budget = 2'000'000;
  std::function<bool()> assign = [&]() -> bool {
    int best = -1, best_sat = -1, best_deg = -1;
    for (int c : order) {
      if (colors_[c] >= 0) continue;
      std::set<int> seen;
      for (int o : conflicts[c])
        if (colors_[o] >= 0) seen.insert(colors_[o]);
      int sat = static_cast<int>(seen.size());
      int deg = static_cast<int>(conflicts[c].size());
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        best = c;
        best_sat = sat;
        best_deg = deg;
      }
    }
    if (best < 0) return true;
    if (--budget < 0) return false;
    const int k = static_cast<int>(families_[cuts_[best].family].colors.size());
    for (int col = 0; col < k; ++col) {
      bool clash = false;
      for (int o : conflicts[best])
        if (colors_[o] == col) {
          clash = true;
          break;
        }
      if (clash) continue;
      colors_[best] = col;
      if (assign()) return true;
      colors_[best] = -1;
      if (budget < 0) return false;
    }
    return false;
  };
  if (!assign()) throw PlanError("cut conflict graph is not colorable with the available glues");

  // Labels are shared only inside a family, where the coloring above keeps distinct cuts
  // apart. A label that could meet a preset or another family's face is an error.
  std::map<std::string, std::set<std::pair<int, Dir>>> uses;  // label -> (family or -1, direction)
  for (int c : order) {
    const Family& fam = families_[cuts_[c].family];
    for (const CutEdge& e : cuts_[c].edges) {
      auto& u = uses[fam.colors.at(colors_[c]).at(e.slot)];
      u.insert({cuts_[c].family, e.d});
      u.insert({cuts_[c].family, opposite(e.d)});
    }
  }
  for (const auto& [p, faces] : presets_)
    for (int d = 0; d < 4; ++d)
      if (!faces[d].first.empty()) uses[faces[d].first].insert({-1, static_cast<Dir>(d)});
  for (const auto& [label, list] : uses)
    for (auto [f1, d1] : list)
      for (auto [f2, d2] : list) {
        if (d2 != opposite(d1)) continue;
        if (f1 >= 0 && f1 == f2) continue;
        throw PlanError("label '" + label + "' can bond outside its intended cut");
      }
}

PointMap<std::array<std::string, 4>> AssemblyPlan::face_labels(int root) const {
  PointMap<std::array<std::string, 4>> faces;
  for (GridPoint p : nodes_.at(root).pixels) faces[p] = {};
  for (const auto& [p, f] : presets_) {
    auto it = faces.find(p);
    if (it == faces.end()) continue;
    for (int d = 0; d < 4; ++d)
      if (!f[d].first.empty()) it->second[d] = f[d].first;
  }
  std::function<void(int)> walk = [&](int v) {
    const PlanNode& n = nodes_[v];
    if (n.leaf()) return;
    for (int c : n.cuts) {
      const Family& fam = families_[cuts_[c].family];
      for (const CutEdge& e : cuts_[c].edges) {
        const std::string& label = fam.colors.at(colors_.at(c)).at(e.slot);
        faces.at(e.p)[static_cast<int>(e.d)] = label;
        faces.at(step(e.p, e.d))[static_cast<int>(opposite(e.d))] = label;
      }
    }
    walk(n.child[0]);
    walk(n.child[1]);
  };
  walk(root);
  return faces;
}

BinRef AssemblyPlan::emit(int root, StagedSystem& sys, PlanBuilder& builder, PointMap<int>* tiles_out) const {
  TileSystem& ts = sys.tiles;
  // Declare the labels in a stable order: cuts by family and color, then presets.
  std::vector<std::pair<std::string, int>> strengths;
  std::set<std::string> used;
  std::function<void(int)> collect = [&](int v) {
    const PlanNode& n = nodes_[v];
    if (n.leaf()) return;
    for (int c : n.cuts) {
      const Family& fam = families_[cuts_[c].family];
      if (fam.strength != ts.temperature())
        throw PlanError("cut family '" + fam.name + "' must have strength equal to the temperature");
      for (const CutEdge& e : cuts_[c].edges) used.insert(fam.colors.at(colors_.at(c)).at(e.slot));
    }
    collect(n.child[0]);
    collect(n.child[1]);
  };
  collect(root);
  for (const Family& fam : families_)
    for (const auto& color : fam.colors)
      for (const std::string& label : color)
        if (used.count(label)) ts.add_glue(label, fam.strength);
  std::vector<GridPoint> preset_pixels;
  for (const auto& [p, f] : presets_) preset_pixels.push_back(p);
  std::sort(preset_pixels.begin(), preset_pixels.end());
  for (GridPoint p : preset_pixels)
    for (const auto& [label, s] : presets_.at(p))
      if (!label.empty()) ts.add_glue(label, s);

  auto faces = face_labels(root);
  PointMap<int> tiles;
  for (GridPoint p : nodes_.at(root).pixels) {
    std::array<GlueId, 4> ids{};
    const auto& f = faces.at(p);
    for (int d = 0; d < 4; ++d) ids[d] = f[d].empty() ? kNullGlue : ts.glue(f[d]);
    tiles[p] = ts.intern_tile(ids);
  }
  std::function<PlanBuilder::Input(int)> build = [&](int v) {
    const PlanNode& n = nodes_[v];
    if (n.leaf()) return PlanBuilder::Input::of_tile(tiles.at(n.pixels.front()));
    auto a = build(n.child[0]);
    auto b = build(n.child[1]);
    return PlanBuilder::Input::of_bin(builder.mix({a, b}));
  };
  PlanBuilder::Input top = build(root);
  if (tiles_out) *tiles_out = std::move(tiles);
  if (top.bin) return *top.bin;
  return builder.mix({top});
}

int AssemblyPlan::depth(int root) const {
  const PlanNode& n = nodes_.at(root);
  if (n.leaf()) return 0;
  return 1 + std::max(depth(n.child[0]), depth(n.child[1]));
}

}  // namespace stagecraft
