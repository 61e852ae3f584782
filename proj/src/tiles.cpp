#include "stagecraft/tiles.hpp"

#include <algorithm>
#include <climits>
#include <unordered_set>

namespace stagecraft {

TileSystem::TileSystem(int temperature) : temperature_(temperature) {
  if (temperature < 1) throw TileSystemError("temperature must be positive");
  glues_.push_back(Glue{"", 0});
}

GlueId TileSystem::add_glue(const std::string& label, int strength) {
  if (label.empty()) throw TileSystemError("glue label must be nonempty");
  if (strength < 1 || strength > temperature_)
    throw TileSystemError("glue '" + label + "' has strength " + std::to_string(strength) +
                          " outside [1, " + std::to_string(temperature_) + "]");
  auto it = glue_index_.find(label);
  if (it != glue_index_.end()) {
    if (glues_[it->second].strength != strength)
      throw TileSystemError("glue '" + label + "' redeclared with a different strength");
    return it->second;
  }
  GlueId id = static_cast<GlueId>(glues_.size());
  glues_.push_back(Glue{label, strength});
  glue_index_[label] = id;
  return id;
}

GlueId TileSystem::glue(const std::string& label) const {
  auto it = glue_index_.find(label);
  if (it == glue_index_.end()) throw TileSystemError("unknown glue '" + label + "'");
  return it->second;
}

namespace {
std::string faces_key(const std::array<GlueId, 4>& f) {
  return std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + "," +
         std::to_string(f[3]);
}
}  // namespace

int TileSystem::add_tile(const std::string& name, const std::array<GlueId, 4>& faces) {
  if (name.empty()) throw TileSystemError("tile name must be nonempty");
  if (tile_index_.count(name)) throw TileSystemError("duplicate tile name '" + name + "'");
  for (GlueId g : faces)
    if (g < 0 || g >= static_cast<GlueId>(glues_.size()))
      throw TileSystemError("tile '" + name + "' references an undeclared glue");
  int id = static_cast<int>(tiles_.size());
  tiles_.push_back(TileType{name, faces});
  tile_index_[name] = id;
  faces_index_.emplace(faces_key(faces), id);
  return id;
}

int TileSystem::intern_tile(const std::array<GlueId, 4>& faces) {
  auto it = faces_index_.find(faces_key(faces));
  if (it != faces_index_.end()) return it->second;
  std::string name;
  for (int k = static_cast<int>(tiles_.size());; ++k) {
    name = "t" + std::to_string(k);
    if (!tile_index_.count(name)) break;
  }
  return add_tile(name, faces);
}

int TileSystem::tile_index(const std::string& name) const {
  auto it = tile_index_.find(name);
  if (it == tile_index_.end()) throw TileSystemError("unknown tile '" + name + "'");
  return it->second;
}

void TileSystem::set_face(int tile, Dir d, GlueId g) {
  if (g < 0 || g >= static_cast<GlueId>(glues_.size())) throw TileSystemError("undeclared glue");
  TileType& t = tiles_.at(tile);
  auto old = faces_key(t.faces);
  auto it = faces_index_.find(old);
  if (it != faces_index_.end() && it->second == tile) faces_index_.erase(it);
  t.faces[static_cast<int>(d)] = g;
  faces_index_.emplace(faces_key(t.faces), tile);
}

bool operator==(const TileSystem& a, const TileSystem& b) {
  if (a.temperature_ != b.temperature_ || a.glues_.size() != b.glues_.size() ||
      a.tiles_.size() != b.tiles_.size())
    return false;
  for (std::size_t i = 0; i < a.glues_.size(); ++i)
    if (a.glues_[i].label != b.glues_[i].label || a.glues_[i].strength != b.glues_[i].strength) return false;
  for (std::size_t i = 0; i < a.tiles_.size(); ++i)
    if (a.tiles_[i].name != b.tiles_[i].name || a.tiles_[i].faces != b.tiles_[i].faces) return false;
  return true;
}

Supertile Supertile::from_cells(std::vector<Cell> cells) {
  if (cells.empty()) throw TileSystemError("supertile must contain at least one tile");
  int minx = INT_MAX, miny = INT_MAX, maxx = INT_MIN, maxy = INT_MIN;
  for (const Cell& c : cells) {
    minx = std::min(minx, c.x);
    miny = std::min(miny, c.y);
    maxx = std::max(maxx, c.x);
    maxy = std::max(maxy, c.y);
  }
  Supertile s;
  s.width_ = maxx - minx + 1;
  s.height_ = maxy - miny + 1;
  s.grid_.assign(static_cast<std::size_t>(s.width_) * s.height_, -1);
  for (Cell& c : cells) {
    c.x -= minx;
    c.y -= miny;
    int& slot = s.grid_[static_cast<std::size_t>(c.y) * s.width_ + c.x];
    if (slot >= 0) throw TileSystemError("overlapping cells in supertile");
    slot = c.tile;
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  };
  for (const Cell& c : cells) {
    mix(static_cast<std::uint32_t>(c.x));
    mix(static_cast<std::uint32_t>(c.y));
    mix(static_cast<std::uint32_t>(c.tile));
  }
  s.hash_ = h;
  s.cells_ = std::move(cells);
  return s;
}

bool operator<(const Supertile& a, const Supertile& b) {
  if (a.cells_.size() != b.cells_.size()) return a.cells_.size() < b.cells_.size();
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    const Cell& p = a.cells_[i];
    const Cell& q = b.cells_[i];
    if (p.y != q.y) return p.y < q.y;
    if (p.x != q.x) return p.x < q.x;
    if (p.tile != q.tile) return p.tile < q.tile;
  }
  return false;
}

FaceIndex::FaceIndex(const Supertile& s, const TileSystem& sys) {
  for (const Cell& c : s.cells()) {
    const TileType& t = sys.tile(c.tile);
    for (Dir d : kDirs) {
      GlueId g = t.face(d);
      if (g == kNullGlue || s.at(step({c.x, c.y}, d)) >= 0) continue;
      int str = sys.strength(g, g);
      if (str <= 0) continue;
      faces_.push_back(Face{static_cast<std::uint32_t>(g) * 4 + static_cast<std::uint32_t>(d), c.x, c.y, str});
    }
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) { return a.key < b.key; });
}

namespace {

std::uint32_t mirror_key(std::uint32_t key) {
  return (key & ~3u) | static_cast<std::uint32_t>(opposite(static_cast<Dir>(key & 3u)));
}

// Calls on_hit(offset) for every translation of y that touches x without overlap and gets
// bonds of total strength at least tau. Only exposed faces can bond, so candidate offsets come
// from pairs of matching exposed faces; their strengths are summed per offset before any
// overlap test.
template <class F>
void scan_placements(const Supertile& x, const FaceIndex& fx, const Supertile& y, const FaceIndex& fy,
                     const TileSystem& sys, F&& on_hit) {
  const int tau = sys.temperature();
  const auto& xf = fx.faces();
  const auto& yf = fy.faces();
  auto key_less = [](const FaceIndex::Face& f, std::uint32_t k) { return f.key < k; };

  // Matching face groups: x faces [begin, end) against y faces [lo, hi).
  struct Group {
    std::size_t begin, end, lo, hi;
  };
  thread_local std::vector<Group> groups;
  groups.clear();
  std::size_t hit_count = 0;
  for (std::size_t i = 0; i < xf.size();) {
    std::size_t j = i;
    while (j < xf.size() && xf[j].key == xf[i].key) ++j;
    const std::uint32_t want = mirror_key(xf[i].key);
    auto lo = std::lower_bound(yf.begin(), yf.end(), want, key_less);
    auto hi = lo;
    while (hi != yf.end() && hi->key == want) ++hi;
    if (hi != lo) {
      groups.push_back({i, j, static_cast<std::size_t>(lo - yf.begin()), static_cast<std::size_t>(hi - yf.begin())});
      hit_count += (j - i) * static_cast<std::size_t>(hi - lo);
    }
    i = j;
  }
  if (hit_count == 0) return;

  // Open-addressing table from offset to summed strength, cleared lazily by generation.
  struct Slot {
    std::uint64_t key = 0;
    std::uint32_t gen = 0;
    int total = 0;
  };
  thread_local std::vector<Slot> table;
  thread_local std::uint32_t gen = 0;
  thread_local std::vector<std::uint64_t> ready;
  std::size_t want_slots = 64;
  while (want_slots < 2 * hit_count) want_slots <<= 1;
  if (table.size() < want_slots) {
    table.assign(want_slots, Slot{});
    gen = 0;
  }
  if (++gen == 0) {
    std::fill(table.begin(), table.end(), Slot{});
    gen = 1;
  }
  const std::size_t mask = table.size() - 1;
  ready.clear();
  for (const Group& g : groups) {
    const Dir d = static_cast<Dir>(xf[g.begin].key & 3u);
    for (std::size_t k = g.begin; k < g.end; ++k) {
      const GridPoint target = step({xf[k].x, xf[k].y}, d);
      for (std::size_t m = g.lo; m < g.hi; ++m) {
        const std::uint64_t key = pack({target.x - yf[m].x, target.y - yf[m].y});
        std::size_t h = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 40) & mask;
        while (table[h].gen == gen && table[h].key != key) h = (h + 1) & mask;
        Slot& slot = table[h];
        if (slot.gen != gen) slot = Slot{key, gen, 0};
        const int before = slot.total;
        slot.total += xf[k].strength;
        if (before < tau && slot.total >= tau) ready.push_back(key);
      }
    }
  }
  std::sort(ready.begin(), ready.end());
  for (std::uint64_t packed : ready) {
    GridPoint off{static_cast<int>(static_cast<std::uint32_t>(packed >> 32)),
                  static_cast<int>(static_cast<std::uint32_t>(packed & 0xffffffffu))};
    bool overlap = false;
    for (const Cell& b : y.cells())
      if (x.at({b.x + off.x, b.y + off.y}) >= 0) {
        overlap = true;
        break;
      }
    if (!overlap && !on_hit(off)) return;
  }
}

}  // namespace

std::vector<Supertile> combine(const Supertile& x, const FaceIndex& fx, const Supertile& y, const FaceIndex& fy,
                               const TileSystem& sys) {
  std::vector<Supertile> out;
  scan_placements(x, fx, y, fy, sys, [&](GridPoint off) {
    std::vector<Cell> cells = x.cells();
    for (const Cell& b : y.cells()) cells.push_back(Cell{b.x + off.x, b.y + off.y, b.tile});
    out.push_back(Supertile::from_cells(std::move(cells)));
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool can_combine(const Supertile& x, const FaceIndex& fx, const Supertile& y, const FaceIndex& fy,
                 const TileSystem& sys) {
  bool hit = false;
  scan_placements(x, fx, y, fy, sys, [&](GridPoint) {
    hit = true;
    return false;
  });
  return hit;
}

std::vector<Supertile> combine(const Supertile& x, const Supertile& y, const TileSystem& sys) {
  return combine(x, FaceIndex(x, sys), y, FaceIndex(y, sys), sys);
}

bool can_combine(const Supertile& x, const Supertile& y, const TileSystem& sys) {
  return can_combine(x, FaceIndex(x, sys), y, FaceIndex(y, sys), sys);
}

std::vector<std::pair<GridPoint, Dir>> weak_edges(const Supertile& s, const TileSystem& sys) {
  std::vector<std::pair<GridPoint, Dir>> out;
  for (const Cell& c : s.cells()) {
    for (Dir d : {Dir::East, Dir::South}) {
      GridPoint q = step({c.x, c.y}, d);
      int n = s.at(q);
      if (n >= 0 && sys.bond(c.tile, d, n) <= 0) out.push_back({{c.x, c.y}, d});
    }
  }
  return out;
}

bool is_fully_connected(const Supertile& s, const TileSystem& sys) { return weak_edges(s, sys).empty(); }

Polyomino shape_of(const Supertile& s) {
  std::vector<GridPoint> pts;
  pts.reserve(s.cells().size());
  for (const Cell& c : s.cells()) pts.push_back({c.x, c.y});
  return Polyomino::from_pixels(pts);
}

}  // namespace stagecraft
