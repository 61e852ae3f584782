// Shape-to-system compilers.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "stagecraft/polyomino.hpp"
#include "stagecraft/staged_system.hpp"

namespace stagecraft {

// Violated construction precondition, e.g. holes given to a hole-free construction.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- Lines and squares -------------------------------------------------------------------

// Temperature 1, three glues, six tiles, at most seven bins per stage; assembles a 1 x n line.
StagedSystem compile_line(int n);

// Temperature 2, four glues, fourteen tiles, at most seven bins per stage; assembles a fully
// connected n x n square from a corner tile, two perpendicular strips and a filler tile.
StagedSystem compile_square_t2(int n);

// ---- Decomposition helpers ---------------------------------------------------------------

// Adjacency structure on pixels. Ties are broken towards the smallest pixel in row-major order.
struct PixelGraph {
  std::vector<GridPoint> nodes;               // sorted row-major
  std::vector<std::vector<int>> adjacency;    // indices into nodes
  static PixelGraph from_pixels(const std::vector<GridPoint>& pixels);  // 4-neighborhood
  int index_of(GridPoint p) const;            // -1 when absent
};

// Node whose removal leaves components of at most ceil(size/2) nodes. Requires a tree.
int tree_median(const PixelGraph& tree);
// Middle node of a path (the one with the smaller pixel for even lengths). Requires a path.
int path_median(const PixelGraph& path);
// Sizes of the components left after removing node v.
std::vector<int> component_sizes_without(const PixelGraph& g, int v);

// ---- Backbone and temperature-2 polyominoes ---------------------------------------------

// Spanning frame of a 3-scaled polyomino: every boundary component minus its cut strip, plus
// one connector per hole running left to the next boundary.
struct Backbone {
  Polyomino scaled;                                  // the 3-scaled input
  std::vector<GridPoint> pixels;                     // sorted row-major
  std::vector<std::vector<GridPoint>> paths;         // boundary component minus cut strip
  std::vector<std::vector<GridPoint>> cut_strips;    // removed pixels per component
  std::vector<std::vector<GridPoint>> connectors;    // one per hole, ordered right to left
  std::vector<GridPoint> degree3;                    // sorted row-major
  std::vector<std::pair<GridPoint, Dir>> inside_edges;  // faces towards scaled \ backbone
};

// Input must be 3-scaled. Throws PreconditionError for other inputs and for shapes where two
// boundaries touch diagonally.
Backbone build_backbone(const Polyomino& scaled);

// One flooding tile: residues (c, r) of a pixel (X, Y) are ((X + 1) mod 3, (Y + 1) mod 3),
// so the left and top boundary rows of every 3x3 block sit at residue 1.
struct FloodTile {
  int c = 0;
  int r = 0;
  std::array<std::string, 4> faces;  // N, E, S, W
};
// The nine-tile chart with three glues g4, g5, g6, exactly as published. It is consistent but
// admits two tile types at some cooperative sites, so fills with it are not unique.
std::vector<FloodTile> flooding_tileset();
// The four-label chart used by the compiler. Any two of its types share at most one face label,
// which makes every cooperative site determine its tile.
std::vector<FloodTile> unique_flooding_tileset();
const FloodTile& flood_tile_at(const std::vector<FloodTile>& set, GridPoint p);

struct PolyT2Options {
  bool force_general = false;   // use the three-level decomposition even without holes
  bool published_chart = false; // flood with flooding_tileset() and its backbone glue rule
};

// Temperature-2 system assembling exactly the backbone (target = backbone shape, scale 1).
StagedSystem compile_backbone_system(const Backbone& b, const PolyT2Options& opt = {});
// Backbone plus one final bin with the flooding tiles; target (P, scale 3).
StagedSystem compile_polyomino_t2(const Polyomino& p, const PolyT2Options& opt = {});

// ---- Temperature 1: rectangle partition and jigsaw assembly ------------------------------

// Inclusive pixel rectangle [x0, x1] x [y0, y1].
struct Rect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Partition by the horizontal chords through reflex vertices: rows of equal horizontal runs
// stacked on top of each other form one rectangle. Rectangles are adjacent when they share a
// horizontal segment; the adjacency graph is a tree exactly when the shape has no holes.
struct RectPartition {
  std::vector<Rect> rects;                   // ordered by (y0, x0)
  std::vector<std::vector<int>> adjacency;   // indices into rects
  bool is_tree() const;
};
RectPartition rect_partition(const Polyomino& p);

// A protrusion (tab) on the north or west side of a rectangle, or an indentation (pocket) on
// its south or east side. Tabs sit outside the rectangle, pockets remove boundary pixels.
struct RectFeature {
  Dir side = Dir::North;
  int offset = 0;  // first column (north/south) or row (west/east) of the feature
  int length = 1;  // 1 or 2 pixels along the side
};

// Temperature 1, nine glues: a w x h rectangle (both even) with at most two tabs on each of the
// north and west sides and at most two pockets on each of the south and east sides.
StagedSystem compile_rect_with_tabs(int w, int h, const std::vector<RectFeature>& features = {});

// Temperature 1, eighteen glues. Assembles P scaled by 4, or P itself when pre_scaled is set,
// in which case every vertical run of pixels must be at least 4 long. Rejects shapes with holes.
StagedSystem compile_holefree_t1(const Polyomino& p, bool pre_scaled = false);

// ---- Temperature 1 with holes -----------------------------------------------------------

// P scaled by 6 split into a frame S1 (all boundary pixels plus one bridge per hole) and the
// remaining interior S2. Bridges run left, one pixel tall, from the lowest of the leftmost pixels
// of each hole's boundary ring; the pixel where a bridge meets the next ring is not part of it.
struct S1S2Partition {
  Polyomino scaled;                              // P scaled by 6
  std::vector<GridPoint> s1;                     // sorted
  std::vector<GridPoint> s2;                     // sorted
  std::vector<std::vector<GridPoint>> rings;     // boundary components; rings[0] is the outside one
  std::vector<std::vector<GridPoint>> bridges;   // bridges[i] starts next to rings[i + 1]
  std::vector<int> bridge_parent;                // ring index reached by bridges[i]
  // Faces of S2 pixels that touch S1: north and west faces carry "red", east and south "blue".
  std::vector<std::pair<GridPoint, Dir>> s2_faces;
};
S1S2Partition partition_s1_s2(const Polyomino& p);

// Temperature 1, at most twenty glues: S1 and S2 are built separately and joined in the last bin
// through the red and blue glues. Target (P, scale 6).
StagedSystem compile_holes_t1(const Polyomino& p);

}  // namespace stagecraft
