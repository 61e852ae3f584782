#include <array>
#include <map>
#include <tuple>

#include "stagecraft/assembly_plan.hpp"
#include "stagecraft/compilers.hpp"

namespace stagecraft {

namespace {

using Group = std::vector<PlanBuilder::Input>;

Group concat(Group a, const Group& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Builds strips of any length from three end labels 0, 1, 2. A strip is described by its
// left and right end labels; two strips join when the right label of one equals the left
// label of the other. Several tracks (families of tiles that never interact) are built in
// the same bins.
class StripDoubler {
 public:
  using Tracks = std::vector<std::array<std::array<int, 3>, 3>>;  // tile[track][left][right]

  StripDoubler(PlanBuilder& builder, Tracks tracks) : builder_(builder), tracks_(std::move(tracks)) {}

  // Strips of length 2^j with end labels (x, y), x != y.
  Group power(int j, int x, int y) {
    auto key = std::make_tuple(j, x, y);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Group g;
    if (j == 0) {
      for (const auto& t : tracks_) g.push_back(PlanBuilder::Input::of_tile(t[x][y]));
    } else {
      const int z = 3 - x - y;
      g = {PlanBuilder::Input::of_bin(builder_.mix(concat(power(j - 1, x, z), power(j - 1, z, y))))};
    }
    memo_.emplace(key, g);
    return g;
  }

  // Strips of length len with left end label 0. Sets `right` to the right end label.
  // Every power bin up to the largest needed length is built for all six label pairs,
  // so the tile and bin counts do not depend on the binary digits of len.
  Group strip(int len, int& right) {
    for (int j = 1; (len >> j) != 0; ++j)
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          if (x != y) power(j, x, y);
    Group acc;
    int x = 0, y = 1;
    bool started = false;
    for (int j = 0; (len >> j) != 0; ++j) {
      if (((len >> j) & 1) == 0) continue;
      if (!started) {
        acc = power(j, x, y);
        started = true;
        continue;
      }
      const int w = 3 - x - y;
      acc = {PlanBuilder::Input::of_bin(builder_.mix(concat(acc, power(j, y, w))))};
      y = w;
    }
    right = y;
    return acc;
  }

 private:
  PlanBuilder& builder_;
  Tracks tracks_;
  std::map<std::tuple<int, int, int>, Group> memo_;
};

const char* kEndLabels[3] = {"a", "b", "c"};

std::string repeat_row(int n) { return std::string(static_cast<std::size_t>(n), '#'); }

}  // namespace

StagedSystem compile_line(int n) {
  if (n < 1) throw PreconditionError("line length must be at least 1");
  StagedSystem sys;
  sys.tiles = TileSystem(1);
  std::array<GlueId, 3> g{};
  for (int i = 0; i < 3; ++i) g[i] = sys.tiles.add_glue(kEndLabels[i], 1);
  StripDoubler::Tracks tracks(1);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != y)
        tracks[0][x][y] = sys.tiles.add_tile(std::string("L") + kEndLabels[x] + kEndLabels[y],
                                             {kNullGlue, g[y], kNullGlue, g[x]});
  PlanBuilder builder(sys);
  StripDoubler doubler(builder, tracks);
  int right = 0;
  Group line = doubler.strip(n, right);
  BinRef out = line.front().bin ? *line.front().bin : builder.mix(line);
  builder.finish(out);
  sys.target = TargetSpec{parse_ascii(repeat_row(n)), 1};
  sys.construction = "line";
  sys.declared = {{"glues", 3}, {"tiles", 6}, {"bins", 7}};
  return sys;
}

StagedSystem compile_square_t2(int n) {
  if (n < 1) throw PreconditionError("square side must be at least 1");
  StagedSystem sys;
  sys.tiles = TileSystem(2);
  std::array<GlueId, 3> g{};
  for (int i = 0; i < 3; ++i) g[i] = sys.tiles.add_glue(kEndLabels[i], 2);
  const GlueId f = sys.tiles.add_glue("f", 1);

  // Horizontal strip tiles carry f on their south faces, vertical ones on their east faces,
  // so the filler tile needs one of each to attach.
  StripDoubler::Tracks tracks(2);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x == y) continue;
      std::string suffix = std::string(kEndLabels[x]) + kEndLabels[y];
      tracks[0][x][y] = sys.tiles.add_tile("H" + suffix, {kNullGlue, g[y], f, g[x]});
      tracks[1][x][y] = sys.tiles.add_tile("V" + suffix, {g[x], f, g[y], kNullGlue});
    }
  const int corner = sys.tiles.add_tile("corner", {kNullGlue, g[0], g[0], kNullGlue});
  const int filler = sys.tiles.add_tile("filler", {f, f, f, f});

  PlanBuilder builder(sys);
  if (n == 1) {
    builder.finish(builder.mix({PlanBuilder::Input::of_tile(corner)}));
  } else {
    StripDoubler doubler(builder, tracks);
    int right = 0;
    Group strips = doubler.strip(n - 1, right);
    strips.push_back(PlanBuilder::Input::of_tile(corner));
    BinRef frame = builder.mix(strips);
    builder.finish(builder.mix({PlanBuilder::Input::of_bin(frame), PlanBuilder::Input::of_tile(filler)}));
  }
  std::string rows;
  for (int i = 0; i < n; ++i) rows += repeat_row(n) + "\n";
  sys.target = TargetSpec{parse_ascii(rows), 1};
  sys.construction = "square-t2";
  sys.declared = {{"glues", 4}, {"tiles", 14}, {"bins", 7}};
  return sys;
}

}  // namespace stagecraft
