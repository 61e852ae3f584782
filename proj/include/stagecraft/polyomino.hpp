// Grid shapes: parsing, scaling and the boundary geometry used by the compilers.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace stagecraft {

// Column x, row y. Rows grow downward, matching the order of lines in ASCII input.
struct GridPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  // Row-major order: first by y, then by x.
  friend bool operator<(const GridPoint& a, const GridPoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

inline std::uint64_t pack(GridPoint p) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
         static_cast<std::uint32_t>(p.y);
}

struct GridPointHash {
  std::size_t operator()(GridPoint p) const noexcept {
    std::uint64_t v = pack(p) * 0x9E3779B97F4A7C15ULL;
    return static_cast<std::size_t>(v ^ (v >> 29));
  }
};

using PointSet = std::unordered_set<GridPoint, GridPointHash>;
template <class V>
using PointMap = std::unordered_map<GridPoint, V, GridPointHash>;

enum class Dir : int { North = 0, East = 1, South = 2, West = 3 };
constexpr Dir kDirs[4] = {Dir::North, Dir::East, Dir::South, Dir::West};
inline Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) % 4); }
inline GridPoint step(GridPoint p, Dir d) {
  switch (d) {
    case Dir::North: return {p.x, p.y - 1};
    case Dir::East: return {p.x + 1, p.y};
    case Dir::South: return {p.x, p.y + 1};
    case Dir::West: return {p.x - 1, p.y};
  }
  return p;
}
const char* dir_name(Dir d);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite, nonempty, 4-connected pixel set translated so that min x = min y = 0.
class Polyomino {
 public:
  Polyomino() = default;

  // Canonicalizes the translation. Throws GeometryError on empty or disconnected input.
  static Polyomino from_pixels(const std::vector<GridPoint>& pixels);

  const std::vector<GridPoint>& pixels() const { return pixels_; }
  int width() const { return width_; }
  int height() const { return height_; }
  int side() const { return width_ > height_ ? width_ : height_; }
  int size() const { return static_cast<int>(pixels_.size()); }
  bool contains(GridPoint p) const {
    if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) return false;
    return grid_[static_cast<std::size_t>(p.y) * width_ + p.x] != 0;
  }

  friend bool operator==(const Polyomino& a, const Polyomino& b) { return a.pixels_ == b.pixels_; }

 private:
  std::vector<GridPoint> pixels_;  // sorted row-major
  std::vector<char> grid_;
  int width_ = 0;
  int height_ = 0;
};

enum class Orientation { Horizontal, Vertical };

struct Strip {
  std::vector<GridPoint> pixels;  // ordered left to right or top to bottom
  Orientation orientation = Orientation::Horizontal;
  GridPoint first() const { return pixels.front(); }
  GridPoint last() const { return pixels.back(); }
};

enum class ComponentKind { Outside, Inside };

struct BoundaryComponent {
  std::vector<GridPoint> pixels;  // sorted row-major
  ComponentKind kind = ComponentKind::Outside;
  std::vector<Strip> strips;      // circular order when the component is a simple cycle
  bool is_cycle = false;
};

Polyomino parse_ascii(const std::string& text);
std::string render_ascii(const Polyomino& p);

Polyomino scale(const Polyomino& p, int c);

std::vector<GridPoint> boundary_pixels(const Polyomino& p);
std::vector<GridPoint> corner_pixels(const Polyomino& p);

// Lattice vertices of the outline. The point (x, y) is the upper-left corner of pixel (x, y).
std::vector<GridPoint> vertices(const Polyomino& p);
std::vector<GridPoint> reflex_vertices(const Polyomino& p);
// Number of outline vertices k. A pinch point is visited twice by the outline and counts twice.
int vertex_count(const Polyomino& p);

std::vector<BoundaryComponent> boundary_components(const Polyomino& p);

// Bounded 4-connected components of the complement, each sorted row-major.
std::vector<std::vector<GridPoint>> holes(const Polyomino& p);
int hole_count(const Polyomino& p);

// Minimum length over all maximal vertical runs of pixels.
int vertical_thickness(const Polyomino& p);

// True when some 2x2 window holds exactly two diagonal pixels. Such shapes have outline
// pinch points where two boundaries touch at a corner.
bool is_pinched(const Polyomino& p);

// Utilities shared by the compilers.
bool is_connected(const std::vector<GridPoint>& pixels);
bool is_connected(const PointSet& pixels);
std::vector<std::vector<GridPoint>> connected_components(const PointSet& pixels);
// Bounded complement components of an arbitrary pixel set.
int hole_count(const PointSet& pixels);

}  // namespace stagecraft
