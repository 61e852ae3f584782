#include "stagecraft/polyomino.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <sstream>

namespace stagecraft {

const char* dir_name(Dir d) {
  switch (d) {
    case Dir::North: return "N";
    case Dir::East: return "E";
    case Dir::South: return "S";
    case Dir::West: return "W";
  }
  return "?";
}

namespace {

const GridPoint kEight[8] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

// Flood fill over a rectangular mask, 4-connectivity. Returns component ids (-1 outside mask).
std::vector<int> label_components(const std::vector<char>& mask, int w, int h, int& count) {
  std::vector<int> id(mask.size(), -1);
  count = 0;
  std::vector<int> stack;
  for (int start = 0; start < w * h; ++start) {
    if (!mask[start] || id[start] >= 0) continue;
    id[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      int cx = cur % w, cy = cur / w;
      const int nx[4] = {cx, cx + 1, cx, cx - 1};
      const int ny[4] = {cy - 1, cy, cy + 1, cy};
      for (int k = 0; k < 4; ++k) {
        if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
        int n = ny[k] * w + nx[k];
        if (mask[n] && id[n] < 0) {
          id[n] = count;
          stack.push_back(n);
        }
      }
    }
    ++count;
  }
  return id;
}

}  // namespace

Polyomino Polyomino::from_pixels(const std::vector<GridPoint>& input) {
  if (input.empty()) throw GeometryError("empty shape");
  int minx = INT_MAX, miny = INT_MAX, maxx = INT_MIN, maxy = INT_MIN;
  for (auto p : input) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  Polyomino out;
  out.width_ = maxx - minx + 1;
  out.height_ = maxy - miny + 1;
  out.grid_.assign(static_cast<std::size_t>(out.width_) * out.height_, 0);
  for (auto p : input) {
    GridPoint q{p.x - minx, p.y - miny};
    char& cell = out.grid_[static_cast<std::size_t>(q.y) * out.width_ + q.x];
    if (!cell) {
      cell = 1;
      out.pixels_.push_back(q);
    }
  }
  std::sort(out.pixels_.begin(), out.pixels_.end());
  int count = 0;
  label_components(out.grid_, out.width_, out.height_, count);
  if (count != 1) throw GeometryError("disconnected shape (" + std::to_string(count) + " components)");
  return out;
}

Polyomino parse_ascii(const std::string& text) {
  std::vector<GridPoint> pts;
  int y = 0;
  std::istringstream in(text);
  std::string line;
  bool any_row = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (any_row) ++y;
      continue;
    }
    any_row = true;
    for (int x = 0; x < static_cast<int>(line.size()); ++x) {
      char c = line[x];
      if (c == '#') {
        pts.push_back({x, y});
      } else if (c != '.') {
        throw GeometryError("illegal character '" + std::string(1, c) + "' at row " + std::to_string(y) +
                            ", column " + std::to_string(x));
      }
    }
    ++y;
  }
  return Polyomino::from_pixels(pts);
}

std::string render_ascii(const Polyomino& p) {
  std::string out;
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) out += p.contains({x, y}) ? '#' : '.';
    out += '\n';
  }
  return out;
}

Polyomino scale(const Polyomino& p, int c) {
  if (c < 1) throw GeometryError("scale factor must be positive");
  std::vector<GridPoint> pts;
  pts.reserve(p.pixels().size() * c * c);
  for (auto q : p.pixels())
    for (int dy = 0; dy < c; ++dy)
      for (int dx = 0; dx < c; ++dx) pts.push_back({q.x * c + dx, q.y * c + dy});
  return Polyomino::from_pixels(pts);
}

std::vector<GridPoint> boundary_pixels(const Polyomino& p) {
  std::vector<GridPoint> out;
  for (auto q : p.pixels()) {
    for (auto d : kEight) {
      if (!p.contains({q.x + d.x, q.y + d.y})) {
        out.push_back(q);
        break;
      }
    }
  }
  return out;
}

std::vector<GridPoint> corner_pixels(const Polyomino& p) {
  auto boundary = boundary_pixels(p);
  PointSet bset(boundary.begin(), boundary.end());
  std::vector<GridPoint> out;
  for (auto q : boundary) {
    std::vector<Dir> nb;
    for (Dir d : kDirs)
      if (bset.count(step(q, d))) nb.push_back(d);
    bool ordinary = nb.size() == 2 && nb[0] == opposite(nb[1]);
    if (!ordinary) out.push_back(q);
  }
  return out;
}

namespace {

// Occupancy pattern of the four pixels around lattice point (x, y).
int window_mask(const Polyomino& p, int x, int y) {
  int m = 0;
  if (p.contains({x - 1, y - 1})) m |= 1;
  if (p.contains({x, y - 1})) m |= 2;
  if (p.contains({x - 1, y})) m |= 4;
  if (p.contains({x, y})) m |= 8;
  return m;
}

bool is_diagonal(int m) { return m == (1 | 8) || m == (2 | 4); }

}  // namespace

std::vector<GridPoint> vertices(const Polyomino& p) {
  std::vector<GridPoint> out;
  for (int y = 0; y <= p.height(); ++y)
    for (int x = 0; x <= p.width(); ++x) {
      int m = window_mask(p, x, y);
      int c = __builtin_popcount(m);
      if (c == 1 || c == 3 || is_diagonal(m)) out.push_back({x, y});
    }
  return out;
}

std::vector<GridPoint> reflex_vertices(const Polyomino& p) {
  std::vector<GridPoint> out;
  for (int y = 0; y <= p.height(); ++y)
    for (int x = 0; x <= p.width(); ++x)
      if (__builtin_popcount(window_mask(p, x, y)) == 3) out.push_back({x, y});
  return out;
}

int vertex_count(const Polyomino& p) {
  int k = 0;
  for (int y = 0; y <= p.height(); ++y)
    for (int x = 0; x <= p.width(); ++x) {
      int m = window_mask(p, x, y);
      int c = __builtin_popcount(m);
      if (c == 1 || c == 3) ++k;
      else if (is_diagonal(m)) k += 2;
    }
  return k;
}

namespace {

// Complement of p inside the bounding box padded by one cell; component 0 touches the padding.
struct Complement {
  int w = 0, h = 0, count = 0;
  std::vector<int> id;  // index (y+1)*w + (x+1)
  int outside_id = -1;
  int at(int x, int y) const { return id[static_cast<std::size_t>(y + 1) * w + (x + 1)]; }
};

Complement complement_of(const Polyomino& p) {
  Complement c;
  c.w = p.width() + 2;
  c.h = p.height() + 2;
  std::vector<char> mask(static_cast<std::size_t>(c.w) * c.h, 0);
  for (int y = -1; y <= p.height(); ++y)
    for (int x = -1; x <= p.width(); ++x)
      if (!p.contains({x, y})) mask[static_cast<std::size_t>(y + 1) * c.w + (x + 1)] = 1;
  c.id = label_components(mask, c.w, c.h, c.count);
  c.outside_id = c.id[0];
  return c;
}

std::vector<Strip> maximal_runs(const std::vector<GridPoint>& comp) {
  PointSet set(comp.begin(), comp.end());
  std::vector<Strip> strips;
  PointSet covered;
  for (auto q : comp) {  // comp sorted row-major: run starts are met first
    if (!set.count({q.x - 1, q.y}) && set.count({q.x + 1, q.y})) {
      Strip s;
      s.orientation = Orientation::Horizontal;
      for (GridPoint r = q; set.count(r); r.x++) s.pixels.push_back(r);
      for (auto r : s.pixels) covered.insert(r);
      strips.push_back(std::move(s));
    }
  }
  std::vector<GridPoint> by_col(comp);
  std::sort(by_col.begin(), by_col.end(),
            [](GridPoint a, GridPoint b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  for (auto q : by_col) {
    if (!set.count({q.x, q.y - 1}) && set.count({q.x, q.y + 1})) {
      Strip s;
      s.orientation = Orientation::Vertical;
      for (GridPoint r = q; set.count(r); r.y++) s.pixels.push_back(r);
      for (auto r : s.pixels) covered.insert(r);
      strips.push_back(std::move(s));
    }
  }
  for (auto q : comp)
    if (!covered.count(q)) strips.push_back(Strip{{q}, Orientation::Horizontal});
  return strips;
}

// Orders strips along a simple cycle, starting from the row-major smallest strip and
// proceeding clockwise (east first from the upper-left corner).
std::vector<Strip> order_cycle(std::vector<Strip> strips) {
  if (strips.size() < 2) return strips;
  auto shares = [](const Strip& a, const Strip& b) {
    for (auto p : {a.first(), a.last()})
      for (auto q : {b.first(), b.last()})
        if (p == q) return true;
    return false;
  };
  std::size_t start = 0;
  for (std::size_t i = 1; i < strips.size(); ++i) {
    const Strip& a = strips[i];
    const Strip& b = strips[start];
    if (a.first() < b.first() ||
        (a.first() == b.first() && a.orientation == Orientation::Horizontal))
      start = i;
  }
  std::vector<Strip> out;
  std::vector<char> used(strips.size(), 0);
  out.push_back(strips[start]);
  used[start] = 1;
  // The first strip is horizontal and starts at the upper-left corner; continue from its east end.
  GridPoint joint = out.back().last();
  while (out.size() < strips.size()) {
    bool advanced = false;
    for (std::size_t i = 0; i < strips.size(); ++i) {
      if (used[i]) continue;
      const Strip& s = strips[i];
      if (s.first() == joint || s.last() == joint) {
        used[i] = 1;
        joint = s.first() == joint ? s.last() : s.first();
        out.push_back(s);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  if (out.size() != strips.size() || !shares(out.front(), out.back())) return strips;
  return out;
}

}  // namespace

std::vector<BoundaryComponent> boundary_components(const Polyomino& p) {
  auto boundary = boundary_pixels(p);
  PointSet bset(boundary.begin(), boundary.end());
  auto comps = connected_components(bset);
  Complement cm = complement_of(p);
  std::vector<BoundaryComponent> out;
  for (auto& pix : comps) {
    BoundaryComponent bc;
    std::sort(pix.begin(), pix.end());
    bc.pixels = pix;
    bool touches_outside = false;
    for (auto q : pix) {
      for (auto d : kEight) {
        GridPoint r{q.x + d.x, q.y + d.y};
        if (!p.contains(r) && cm.at(r.x, r.y) == cm.outside_id) touches_outside = true;
      }
    }
    bc.kind = touches_outside ? ComponentKind::Outside : ComponentKind::Inside;
    bool cycle = pix.size() >= 4;
    for (auto q : pix) {
      int deg = 0;
      for (Dir d : kDirs) deg += bset.count(step(q, d)) ? 1 : 0;
      if (deg != 2) cycle = false;
    }
    bc.is_cycle = cycle;
    bc.strips = maximal_runs(pix);
    if (cycle) bc.strips = order_cycle(std::move(bc.strips));
    out.push_back(std::move(bc));
  }
  std::stable_sort(out.begin(), out.end(), [](const BoundaryComponent& a, const BoundaryComponent& b) {
    if (a.kind != b.kind) return a.kind == ComponentKind::Outside;
    return a.pixels.front() < b.pixels.front();
  });
  return out;
}

std::vector<std::vector<GridPoint>> holes(const Polyomino& p) {
  Complement cm = complement_of(p);
  std::vector<std::vector<GridPoint>> out(cm.count);
  for (int y = 0; y < p.height(); ++y)
    for (int x = 0; x < p.width(); ++x)
      if (!p.contains({x, y})) out[cm.at(x, y)].push_back({x, y});
  std::vector<std::vector<GridPoint>> result;
  for (int i = 0; i < cm.count; ++i)
    if (i != cm.outside_id && !out[i].empty()) result.push_back(out[i]);
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

int hole_count(const Polyomino& p) { return static_cast<int>(holes(p).size()); }

int vertical_thickness(const Polyomino& p) {
  int best = INT_MAX;
  for (int x = 0; x < p.width(); ++x) {
    int run = 0;
    for (int y = 0; y <= p.height(); ++y) {
      if (y < p.height() && p.contains({x, y})) {
        ++run;
      } else if (run > 0) {
        best = std::min(best, run);
        run = 0;
      }
    }
  }
  return best == INT_MAX ? 0 : best;
}

bool is_pinched(const Polyomino& p) {
  for (int y = 0; y <= p.height(); ++y)
    for (int x = 0; x <= p.width(); ++x)
      if (is_diagonal(window_mask(p, x, y))) return true;
  return false;
}

std::vector<std::vector<GridPoint>> connected_components(const PointSet& pixels) {
  std::vector<GridPoint> order(pixels.begin(), pixels.end());
  std::sort(order.begin(), order.end());
  PointSet seen;
  std::vector<std::vector<GridPoint>> out;
  for (auto s : order) {
    if (seen.count(s)) continue;
    std::vector<GridPoint> comp;
    std::vector<GridPoint> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      GridPoint q = stack.back();
      stack.pop_back();
      comp.push_back(q);
      for (Dir d : kDirs) {
        GridPoint r = step(q, d);
        if (pixels.count(r) && !seen.count(r)) {
          seen.insert(r);
          stack.push_back(r);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const PointSet& pixels) {
  if (pixels.empty()) return false;
  return connected_components(pixels).size() == 1;
}

bool is_connected(const std::vector<GridPoint>& pixels) {
  return is_connected(PointSet(pixels.begin(), pixels.end()));
}

int hole_count(const PointSet& pixels) {
  if (pixels.empty()) return 0;
  std::vector<GridPoint> v(pixels.begin(), pixels.end());
  int minx = INT_MAX, miny = INT_MAX, maxx = INT_MIN, maxy = INT_MIN;
  for (auto q : v) {
    minx = std::min(minx, q.x);
    miny = std::min(miny, q.y);
    maxx = std::max(maxx, q.x);
    maxy = std::max(maxy, q.y);
  }
  int w = maxx - minx + 3, h = maxy - miny + 3;
  std::vector<char> mask(static_cast<std::size_t>(w) * h, 1);
  for (auto q : v) mask[static_cast<std::size_t>(q.y - miny + 1) * w + (q.x - minx + 1)] = 0;
  int count = 0;
  label_components(mask, w, h, count);
  return count - 1;
}

}  // namespace stagecraft
