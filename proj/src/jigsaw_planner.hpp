// Recursive straight-line bisection of a pixel region into an assembly plan whose cuts are
// keyed with jigsaw tabs, so that pieces meet in exactly one way at temperature 1.
#pragma once

#include <vector>

#include "stagecraft/assembly_plan.hpp"

namespace stagecraft::detail {

// Glue families for temperature-1 plans. With split_by_orientation there are two families,
// one for cuts along horizontal lines and one for vertical lines, each with three colors of
// three labels (18 labels). Otherwise a single family of nine labels serves both.
std::vector<Family> jigsaw_families(bool split_by_orientation);

class JigsawPlanner {
 public:
  JigsawPlanner(AssemblyPlan& plan, int horizontal_family, int vertical_family)
      : plan_(plan), hfam_(horizontal_family), vfam_(vertical_family) {}

  // Builds the merge tree of a connected region and returns its root node.
  // Cut colors are pinned on the way down. Throws PlanError when some piece admits no keyed,
  // colorable split.
  int build(std::vector<GridPoint> region);

 private:
  // An unbonded face of a piece, left by a cut that will be joined higher up the tree.
  struct OpenFace {
    GridPoint p;
    int dir, slot, family, color;
  };
  int build(std::vector<GridPoint> region, const std::vector<OpenFace>& open);
  bool color_cuts(std::vector<Cut>& cuts, std::vector<OpenFace> open) const;

  AssemblyPlan& plan_;
  int hfam_;
  int vfam_;
};

}  // namespace stagecraft::detail
