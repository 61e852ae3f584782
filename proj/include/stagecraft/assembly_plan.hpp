// Hierarchical assembly plans: a binary merge tree over the pixels of a target supertile,
// cut coloring so that every bin has a single possible combination, and emission of the
// resulting mix graph.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stagecraft/polyomino.hpp"
#include "stagecraft/staged_system.hpp"

namespace stagecraft {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Emits bins stage by stage. Pieces that are ready early are carried forward through
// single-input bins; bins with identical (stage, inputs, tiles) are shared.
class PlanBuilder {
 public:
  explicit PlanBuilder(StagedSystem& sys) : sys_(sys) {}

  struct Input {
    std::optional<BinRef> bin;  // a supertile produced by an earlier bin
    int tile = -1;              // or a single tile type (available at every stage)
    static Input of_bin(BinRef r) { return Input{r, -1}; }
    static Input of_tile(int t) { return Input{std::nullopt, t}; }
    int ready() const { return bin ? bin->stage : 0; }
  };

  // Bin at stage max(ready)+1 (or `at_least` if larger) mixing all inputs.
  BinRef mix(const std::vector<Input>& inputs, int at_least = 1);
  BinRef carry(BinRef r, int to_stage);
  BinRef add_bin(int stage, std::vector<BinRef> from, std::vector<int> adds);
  // Declares `r` the only bin feeding the output node. r must sit in the last stage.
  void finish(BinRef r);

 private:
  StagedSystem& sys_;
  std::map<std::tuple<int, std::vector<BinRef>, std::vector<int>>, BinRef> dedupe_;
};

// One edge of a cut: between pixel p and step(p, d). p lies on side 0 of the cut.
struct CutEdge {
  GridPoint p;
  Dir d = Dir::East;
  int slot = 0;  // index into the color's label list
};

// A glue family: interchangeable colors, each a list of labels addressed by slot.
struct Family {
  std::string name;
  std::vector<std::vector<std::string>> colors;
  int strength = 1;
};

struct Cut {
  int family = 0;
  std::vector<CutEdge> edges;
  int fixed_color = -1;  // >= 0 pins the color
};

struct PlanNode {
  std::vector<GridPoint> pixels;  // sorted row-major
  int child[2] = {-1, -1};
  std::vector<int> cuts;          // cuts joined when the two children merge
  int parent = -1;
  bool leaf() const { return child[0] < 0; }
};

// Build bottom-up with leaf() and merge(); then solve() assigns colors and emit() writes
// tiles and bins into a staged system.
class AssemblyPlan {
 public:
  explicit AssemblyPlan(std::vector<Family> families) : families_(std::move(families)) {}

  int leaf(GridPoint p);
  // Cut edges must run between the two children; every adjacency between them must be covered.
  int merge(int a, int b, std::vector<Cut> cuts);
  // Cuts for all adjacencies between the two pieces, one single-edge cut per adjacent pair,
  // in family `ns_family` for vertical neighbors and `ew_family` for horizontal neighbors.
  int merge_single_edges(int a, int b, int ns_family, int ew_family);

  // Label on a face that is exposed in the final product and never bonded by this plan.
  void preset(GridPoint p, Dir d, const std::string& label, int strength);

  const PlanNode& node(int i) const { return nodes_.at(i); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::vector<Family>& families() const { return families_; }

  // Colors the cuts. Throws PlanError when the conflict graph cannot be colored with the
  // colors of its family.
  void solve(int root);
  int color(int cut) const { return colors_.at(cut); }

  // Face labels of every pixel under `root` after solve().
  PointMap<std::array<std::string, 4>> face_labels(int root) const;
  // Declares the glues, interns tiles and emits bins. Returns the bin producing the root
  // piece together with a map pixel -> tile index.
  BinRef emit(int root, StagedSystem& sys, PlanBuilder& builder, PointMap<int>* tiles_out = nullptr) const;

  // Longest leaf-to-root merge chain.
  int depth(int root) const;

 private:
  std::vector<Family> families_;
  std::vector<PlanNode> nodes_;
  std::vector<Cut> cuts_;
  std::vector<int> colors_;
  PointMap<std::array<std::pair<std::string, int>, 4>> presets_;
};

}  // namespace stagecraft
