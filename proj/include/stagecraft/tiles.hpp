// Tiles, glues, supertiles and the two-handed combination rule.
#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "stagecraft/polyomino.hpp"

namespace stagecraft {

using GlueId = int;  // 0 is the null glue
constexpr GlueId kNullGlue = 0;

struct Glue {
  std::string label;
  int strength = 0;
};

struct TileType {
  std::string name;
  std::array<GlueId, 4> faces{};  // indexed by Dir: N, E, S, W
  GlueId face(Dir d) const { return faces[static_cast<int>(d)]; }
};

class TileSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tile types plus a diagonal glue function: a label bonds only with itself.
class TileSystem {
 public:
  explicit TileSystem(int temperature = 1);

  int temperature() const { return temperature_; }

  // Declares a glue. Strength must lie in [1, temperature]. Redeclaring with the same
  // strength returns the existing id.
  GlueId add_glue(const std::string& label, int strength);
  GlueId glue(const std::string& label) const;  // throws for unknown labels
  bool has_glue(const std::string& label) const { return glue_index_.count(label) != 0; }
  const Glue& glue_info(GlueId id) const { return glues_.at(id); }
  // Number of declared non-null labels.
  int glue_count() const { return static_cast<int>(glues_.size()) - 1; }

  // Adds a named tile. Throws on duplicate names or undeclared glues.
  int add_tile(const std::string& name, const std::array<GlueId, 4>& faces);
  // Returns the tile with these faces, creating one named "t<k>" if needed.
  int intern_tile(const std::array<GlueId, 4>& faces);
  int tile_index(const std::string& name) const;  // throws for unknown names
  const TileType& tile(int i) const { return tiles_.at(i); }
  int tile_count() const { return static_cast<int>(tiles_.size()); }
  void set_face(int tile, Dir d, GlueId g);

  int strength(GlueId a, GlueId b) const {
    return (a == b && a != kNullGlue) ? glues_[a].strength : 0;
  }
  // Strength of the bond between tile a's face d and tile b's opposite face.
  int bond(int a, Dir d, int b) const {
    return strength(tiles_[a].faces[static_cast<int>(d)], tiles_[b].faces[static_cast<int>(opposite(d))]);
  }

  friend bool operator==(const TileSystem& a, const TileSystem& b);

 private:
  int temperature_;
  std::vector<Glue> glues_;
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, GlueId> glue_index_;
  std::unordered_map<std::string, int> tile_index_;
  std::unordered_map<std::string, int> faces_index_;
};

struct Cell {
  int x = 0;
  int y = 0;
  int tile = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// A translation-canonical placement of tiles: min x = min y = 0, cells sorted row-major.
class Supertile {
 public:
  Supertile() = default;
  static Supertile from_cells(std::vector<Cell> cells);  // throws on overlap or empty input
  static Supertile single(int tile) { return from_cells({Cell{0, 0, tile}}); }

  const std::vector<Cell>& cells() const { return cells_; }
  int size() const { return static_cast<int>(cells_.size()); }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t hash() const { return hash_; }
  // Tile index at p, or -1.
  int at(GridPoint p) const {
    if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) return -1;
    return grid_[static_cast<std::size_t>(p.y) * width_ + p.x];
  }

  friend bool operator==(const Supertile& a, const Supertile& b) {
    return a.hash_ == b.hash_ && a.cells_ == b.cells_;
  }
  // Deterministic total order: size, then cell list.
  friend bool operator<(const Supertile& a, const Supertile& b);

 private:
  std::vector<Cell> cells_;
  std::vector<int> grid_;
  int width_ = 0;
  int height_ = 0;
  std::size_t hash_ = 0;
};

struct SupertileHash {
  std::size_t operator()(const Supertile& s) const noexcept { return s.hash(); }
};

// Exposed positive faces of a supertile, sorted by (glue, direction) key. Building it once per
// supertile makes repeated placement tests against the same supertile cheap.
class FaceIndex {
 public:
  struct Face {
    std::uint32_t key = 0;  // glue * 4 + direction
    int x = 0;
    int y = 0;
    int strength = 0;
  };
  FaceIndex(const Supertile& s, const TileSystem& sys);
  const std::vector<Face>& faces() const { return faces_; }

 private:
  std::vector<Face> faces_;
};

// All supertiles obtained by placing y next to x without overlap so that the newly
// coincident edges have total strength at least the temperature. Sorted, duplicate free.
std::vector<Supertile> combine(const Supertile& x, const Supertile& y, const TileSystem& sys);
// Same test with early exit.
bool can_combine(const Supertile& x, const Supertile& y, const TileSystem& sys);
// Variants reusing precomputed face indices of x and y.
std::vector<Supertile> combine(const Supertile& x, const FaceIndex& fx, const Supertile& y, const FaceIndex& fy,
                               const TileSystem& sys);
bool can_combine(const Supertile& x, const FaceIndex& fx, const Supertile& y, const FaceIndex& fy,
                 const TileSystem& sys);

bool is_fully_connected(const Supertile& s, const TileSystem& sys);
// Adjacent tile pairs whose shared edge carries no positive bond.
std::vector<std::pair<GridPoint, Dir>> weak_edges(const Supertile& s, const TileSystem& sys);

Polyomino shape_of(const Supertile& s);

}  // namespace stagecraft
