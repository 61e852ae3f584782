// Acceptance run: one PASS/FAIL line per criterion, thresholds fixed below.
// With a criterion number as argument only that criterion runs.
// Exit status is 0 only when every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "stagecraft/compilers.hpp"
#include "stagecraft/fixtures.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

namespace {

// ---- Pinned thresholds ----------------------------------------------------------------
constexpr int kLineMaxN = 32;
constexpr int kLineGlues = 3;
constexpr int kLineMaxTiles = 6;
constexpr int kLineMaxBins = 7;
constexpr double kLineSeconds = 1.0;

constexpr int kSquareMaxN = 10;
constexpr int kSquareGlues = 4;
constexpr int kSquareMaxTiles = 14;
constexpr int kSquareMaxBins = 7;
constexpr int kSquareDoublingStages = 4;
constexpr double kSquareSeconds = 5.0;

constexpr int kBackboneRandomShapes = 200;
constexpr int kBackboneBox = 6;
constexpr double kBackboneSeconds = 10.0;

constexpr int kPolyMaxGlues = 6;
constexpr int kOracleMaxArea = 60;  // P^3 area up to which exhaustive saturation is compared
constexpr int kOracleRandomShapes = 12;
constexpr int kOracleRandomMaxArea = 4;  // pre-scale area of the extra random shapes

constexpr int kHoleFreeMaxGlues = 18;
constexpr int kHolesMaxGlues = 20;
constexpr double kHolesSeconds = 60.0;

constexpr double kLogSquaredConstant = 1.5;  // c in stages <= c * ceil(log2 n)^2 for annuli
constexpr double kLogConstant = 3.0;         // c' in stages <= c' * ceil(log2 n) for hole-free shapes

constexpr int kConfluenceOrders = 10;
constexpr int kMutations = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int ceil_log2(int n) { return static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))); }

// Collects failures for one criterion; the first few are kept for the report line.
class Outcome {
 public:
  void fail(const std::string& why) {
    ++failures_;
    if (reasons_.size() < 4) reasons_.push_back(why);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    if (failures_) {
      os << failures_ << " failure(s):";
      for (const auto& r : reasons_) os << " [" << r << "]";
    }
    for (const auto& n : notes_) os << (os.tellp() > 0 ? "; " : "") << n;
    return os.str();
  }

 private:
  int failures_ = 0;
  std::vector<std::string> reasons_;
  std::vector<std::string> notes_;
};

std::string first_note(const Verdict& v) { return v.notes.empty() ? "verification failed" : v.notes.front(); }

std::string cells_bytes(const Supertile& s) {
  std::ostringstream os;
  for (const Cell& c : s.cells()) os << c.x << ',' << c.y << ',' << c.tile << ';';
  return os.str();
}

// ---- Criteria -------------------------------------------------------------------------

Outcome criterion_lines() {
  Outcome o;
  double worst = 0;
  for (int n = 1; n <= kLineMaxN; ++n) {
    const auto t0 = Clock::now();
    StagedSystem sys = compile_line(n);
    Verdict v = simulate_and_verify(sys);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    const std::string tag = "n=" + std::to_string(n);
    if (!v.ok()) o.fail(tag + " " + first_note(v));
    if (v.complexity.glues != kLineGlues) o.fail(tag + " glues " + std::to_string(v.complexity.glues));
    if (v.complexity.tiles > kLineMaxTiles) o.fail(tag + " tiles " + std::to_string(v.complexity.tiles));
    if (v.complexity.bins > kLineMaxBins) o.fail(tag + " bins " + std::to_string(v.complexity.bins));
    if (t >= kLineSeconds) o.fail(tag + " took " + std::to_string(t) + " s");
  }
  o.note("slowest " + std::to_string(worst) + " s");
  return o;
}

Outcome criterion_squares() {
  Outcome o;
  for (int n = 1; n <= kSquareMaxN; ++n) {
    const auto t0 = Clock::now();
    StagedSystem sys = compile_square_t2(n);
    Verdict v = simulate_and_verify(sys);
    const double t = seconds_since(t0);
    const std::string tag = "n=" + std::to_string(n);
    if (!v.ok()) o.fail(tag + " " + first_note(v));
    if (v.complexity.glues != kSquareGlues) o.fail(tag + " glues " + std::to_string(v.complexity.glues));
    if (v.complexity.tiles > kSquareMaxTiles) o.fail(tag + " tiles " + std::to_string(v.complexity.tiles));
    if (v.complexity.bins > kSquareMaxBins) o.fail(tag + " bins " + std::to_string(v.complexity.bins));
    if (t >= kSquareSeconds) o.fail(tag + " took " + std::to_string(t) + " s");
  }
  std::string steps;
  for (int n : {4, 8, 16}) {
    const int a = complexity_report(compile_square_t2(n)).stages;
    const int b = complexity_report(compile_square_t2(2 * n)).stages;
    steps += " " + std::to_string(n) + "->" + std::to_string(2 * n) + ":+" + std::to_string(b - a);
    if (b - a > kSquareDoublingStages) o.fail("stages(" + std::to_string(2 * n) + ") - stages(" + std::to_string(n) + ") = " + std::to_string(b - a));
  }
  o.note("stage growth on doubling" + steps);
  return o;
}

void check_backbone(const Polyomino& p, const std::string& tag, Outcome& o) {
  Backbone b = build_backbone(scale(p, 3));
  if (!is_connected(b.pixels)) o.fail(tag + " backbone disconnected");
  PointSet set(b.pixels.begin(), b.pixels.end());
  if (hole_count(set) != 0) o.fail(tag + " backbone encloses a hole");
  const int allowed = 2 * hole_count(p);
  if (static_cast<int>(b.degree3.size()) > allowed)
    o.fail(tag + " " + std::to_string(b.degree3.size()) + " degree-3 pixels, allowed " + std::to_string(allowed));
}

Outcome criterion_backbone() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const char* name : {"pixel", "L", "annulus", "two-holes", "figure"}) check_backbone(*fixtures::by_name(name), name, o);
  fixtures::RandomShapeOptions opt;
  opt.box = kBackboneBox;
  for (int seed = 0; seed < kBackboneRandomShapes; ++seed)
    check_backbone(fixtures::random_polyomino(seed, opt), "seed " + std::to_string(seed), o);
  const double t = seconds_since(t0);
  if (t >= kBackboneSeconds) o.fail("took " + std::to_string(t) + " s");
  o.note(std::to_string(5 + kBackboneRandomShapes) + " shapes in " + std::to_string(t) + " s");
  return o;
}

Outcome criterion_poly_t2() {
  Outcome o;
  int max_glues = 0;
  for (const std::string& name : fixtures::names()) {
    Polyomino p = *fixtures::by_name(name);
    StagedSystem sys = compile_polyomino_t2(p);
    Verdict v = simulate_and_verify(sys);
    if (!v.ok()) o.fail(name + " " + first_note(v));
    if (v.complexity.scale != 3) o.fail(name + " scale " + std::to_string(v.complexity.scale));
    max_glues = std::max(max_glues, v.complexity.glues);
    if (v.complexity.glues > kPolyMaxGlues)
      o.fail(name + " uses " + std::to_string(v.complexity.glues) + " glues, bound " + std::to_string(kPolyMaxGlues));
    if (hole_count(p) == 0) {
      PolyT2Options general;
      general.force_general = true;
      const int fast = complexity_report(sys).stages;
      const int slow = complexity_report(compile_polyomino_t2(p, general)).stages;
      if (fast >= slow) o.fail(name + " fast path " + std::to_string(fast) + " stages vs " + std::to_string(slow));
    }
  }
  o.note("max glues " + std::to_string(max_glues));

  // Oracle: accretion against exhaustive saturation.
  std::vector<std::pair<std::string, Polyomino>> small;
  for (const std::string& name : fixtures::names()) {
    Polyomino p = *fixtures::by_name(name);
    if (9 * static_cast<int>(p.pixels().size()) <= kOracleMaxArea) small.push_back({name, p});
  }
  fixtures::RandomShapeOptions opt;
  opt.box = 3;
  opt.max_area = kOracleRandomMaxArea;
  for (int seed = 0; seed < kOracleRandomShapes; ++seed)
    small.push_back({"seed " + std::to_string(seed), fixtures::random_polyomino(seed, opt)});
  SimConfig exhaustive;
  exhaustive.mode = SimMode::Exhaustive;
  SimConfig accrete;
  accrete.mode = SimMode::Accrete;
  for (const auto& [name, p] : small) {
    StagedSystem sys = compile_polyomino_t2(p);
    RunReport a = run(sys, accrete);
    RunReport e = run(sys, exhaustive);
    if (!a.ok() || !e.ok()) {
      o.fail(name + " oracle run failed: " + (a.ok() ? e.detail : a.detail));
      continue;
    }
    if (a.output != e.output) o.fail(name + " accretion and exhaustive saturation disagree");
  }
  o.note("oracle compared on " + std::to_string(small.size()) + " shapes");
  return o;
}

Outcome criterion_holefree_t1() {
  Outcome o;
  const std::vector<std::pair<std::string, Polyomino>> shapes{
      {"rectangle", parse_ascii("####\n####\n####\n")},
      {"L", fixtures::l_shape()},
      {"T", fixtures::t_shape()},
      {"staircase", fixtures::staircase(4)},
  };
  for (const auto& [name, p] : shapes) {
    if (p.width() > 5 || p.height() > 5) o.fail(name + " fixture exceeds the 5x5 box");
    Verdict v = simulate_and_verify(compile_holefree_t1(p));
    if (!v.ok()) o.fail(name + " " + first_note(v));
    if (v.complexity.scale != 4) o.fail(name + " scale " + std::to_string(v.complexity.scale));
    if (v.complexity.glues > kHoleFreeMaxGlues) o.fail(name + " glues " + std::to_string(v.complexity.glues));
  }
  // Thick shapes need no scaling; the second one is not a scaled copy of anything.
  const std::vector<std::pair<std::string, Polyomino>> thick{
      {"L x4", scale(fixtures::l_shape(), 4)},
      {"terraces", parse_ascii("#...\n##..\n###.\n####\n####\n####\n.###\n..##\n")},
  };
  for (const auto& [name, p] : thick) {
    if (vertical_thickness(p) < 4) o.fail(name + " is not thick");
    Verdict v = simulate_and_verify(compile_holefree_t1(p, true));
    if (!v.ok()) o.fail(name + " " + first_note(v));
    if (v.complexity.scale != 1) o.fail(name + " scale " + std::to_string(v.complexity.scale));
    if (v.complexity.glues > kHoleFreeMaxGlues) o.fail(name + " glues " + std::to_string(v.complexity.glues));
  }
  return o;
}

Outcome criterion_holes_t1() {
  Outcome o;
  for (const char* name : {"annulus", "two-holes"}) {
    const auto t0 = Clock::now();
    Polyomino p = *fixtures::by_name(name);
    if (p.width() > 4 && p.height() > 4) o.fail(std::string(name) + " fixture too large");
    S1S2Partition part = partition_s1_s2(p);
    Polyomino s2 = Polyomino::from_pixels(part.s2);
    if (!is_connected(part.s2)) o.fail(std::string(name) + " S2 disconnected");
    if (hole_count(s2) != 0) o.fail(std::string(name) + " S2 has holes");
    if (vertical_thickness(s2) < 4) o.fail(std::string(name) + " S2 thinner than 4");
    if (part.bridges.size() != static_cast<std::size_t>(hole_count(p))) o.fail(std::string(name) + " bridge count");
    for (std::size_t i = 0; i < part.bridges.size(); ++i) {
      int r = static_cast<int>(i) + 1, steps = 0;
      while (r != 0 && steps++ <= static_cast<int>(part.rings.size())) r = part.bridge_parent[r - 1];
      if (r != 0) o.fail(std::string(name) + " bridge tree not rooted at the outside");
    }
    Verdict v = simulate_and_verify(compile_holes_t1(p));
    if (!v.ok()) o.fail(std::string(name) + " " + first_note(v));
    if (v.complexity.scale != 6) o.fail(std::string(name) + " scale " + std::to_string(v.complexity.scale));
    if (v.complexity.glues > kHolesMaxGlues) o.fail(std::string(name) + " glues " + std::to_string(v.complexity.glues));
    const double t = seconds_since(t0);
    if (t >= kHolesSeconds) o.fail(std::string(name) + " took " + std::to_string(t) + " s");
    o.note(std::string(name) + " " + std::to_string(v.complexity.glues) + " glues");
  }
  return o;
}

Outcome criterion_stage_growth() {
  Outcome o;
  std::string annuli, holefree;
  for (int n : {6, 12, 24, 48}) {
    Polyomino ring = scale(fixtures::annulus(), n / 3);
    StagedSystem sys = compile_polyomino_t2(ring);
    const int stages = complexity_report(sys).stages;
    const int lg = ceil_log2(n);
    annuli += " " + std::to_string(n) + ":" + std::to_string(stages);
    if (stages > kLogSquaredConstant * lg * lg) o.fail("annulus n=" + std::to_string(n) + " " + std::to_string(stages) + " stages");
    if (n <= 24 && !simulate_and_verify(sys).ok()) o.fail("annulus n=" + std::to_string(n) + " does not verify");

    for (const char* name : {"L", "T", "figure"}) {
      Polyomino base = *fixtures::by_name(name);
      Polyomino p = scale(base, std::max(1, n / std::max(base.width(), base.height())));
      const int side = std::max(p.width(), p.height());
      const int lgs = ceil_log2(side);
      const int fast = complexity_report(compile_polyomino_t2(p)).stages;
      const int t1 = complexity_report(compile_holefree_t1(p)).stages;
      holefree += " " + std::string(name) + std::to_string(side) + ":" + std::to_string(fast) + "/" + std::to_string(t1);
      if (fast > kLogConstant * lgs) o.fail(std::string(name) + " poly-t2 " + std::to_string(fast) + " stages at n=" + std::to_string(side));
      if (t1 > kLogConstant * lgs) o.fail(std::string(name) + " holefree-t1 " + std::to_string(t1) + " stages at n=" + std::to_string(side));
    }
  }
  o.note("annuli stages" + annuli + " (c=" + std::to_string(kLogSquaredConstant) + ")");
  o.note("hole-free poly-t2/holefree-t1 stages" + holefree + " (c'=" + std::to_string(kLogConstant) + ")");
  return o;
}

Outcome criterion_confluence() {
  Outcome o;
  for (const std::string& name : fixtures::names()) {
    StagedSystem sys = compile_polyomino_t2(*fixtures::by_name(name));
    RunReport r = run(sys);
    if (!r.ok()) {
      o.fail(name + " run failed");
      continue;
    }
    // The last bin mixes the backbone supertile with single flooding tiles.
    const BinRef last = sys.output.front();
    const BinSpec& spec = sys.bin(last);
    if (spec.from.size() != 1) {
      o.fail(name + " unexpected final bin");
      continue;
    }
    const BinRef from = spec.from.front();
    const auto& seeds = r.bins[from.stage - 1][from.bin].terminal;
    if (seeds.size() != 1) {
      o.fail(name + " backbone bin is not unique");
      continue;
    }
    std::set<std::string> distinct;
    for (std::uint64_t rng = 0; rng < 3; ++rng) {
      BinResult b = accrete_fill(seeds.front(), spec.adds, sys.tiles, kConfluenceOrders, rng);
      if (!b.ok()) o.fail(name + " " + b.detail);
      for (const Supertile& t : b.terminal) distinct.insert(cells_bytes(t));
    }
    if (distinct.size() != 1) o.fail(name + " " + std::to_string(distinct.size()) + " distinct results");
  }
  return o;
}

Outcome criterion_mutations() {
  Outcome o;
  std::vector<std::pair<std::string, StagedSystem>> systems;
  systems.push_back({"line-8", compile_line(8)});
  systems.push_back({"square-t2-6", compile_square_t2(6)});
  systems.push_back({"poly-t2-L", compile_polyomino_t2(fixtures::l_shape())});
  systems.push_back({"holefree-t1-T", compile_holefree_t1(fixtures::t_shape())});
  systems.push_back({"holes-t1-annulus", compile_holes_t1(fixtures::annulus())});
  const int per_system = kMutations / static_cast<int>(systems.size());
  std::mt19937_64 rng(2024);
  int caught = 0, tried = 0;
  for (const auto& [name, original] : systems) {
    RunReport clean = run(original);
    if (clean.output.size() != 1) {
      o.fail(name + " does not assemble before mutation");
      continue;
    }
    const auto& cells = clean.output.front().cells();
    for (int k = 0; k < per_system; ++k) {
      StagedSystem sys = original;
      // A tile of the product with a face that is bonded in the product.
      int tile = -1;
      Dir dir = Dir::North;
      while (tile < 0) {
        const Cell& c = cells[rng() % cells.size()];
        const Dir d = kDirs[rng() % 4];
        if (sys.tiles.tile(c.tile).face(d) == kNullGlue) continue;
        if (clean.output.front().at(step(GridPoint{c.x, c.y}, d)) < 0) continue;
        tile = c.tile;
        dir = d;
      }
      const GlueId old = sys.tiles.tile(tile).face(dir);
      // Either erase the glue or swap in a different declared label.
      GlueId replacement = kNullGlue;
      if (k % 2 == 1 && sys.tiles.glue_count() > 1) {
        do replacement = 1 + static_cast<GlueId>(rng() % sys.tiles.glue_count());
        while (replacement == old);
      }
      sys.tiles.set_face(tile, dir, replacement);
      ++tried;
      Verdict v = simulate_and_verify(sys);
      if (v.ok()) o.fail(name + " still verifies after changing a face of tile " + sys.tiles.tile(tile).name);
      else ++caught;
    }
  }
  o.note(std::to_string(caught) + " of " + std::to_string(tried) + " mutations caught");
  if (tried != kMutations) o.fail("ran " + std::to_string(tried) + " mutations");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"line systems", criterion_lines},
      {"temperature-2 squares", criterion_squares},
      {"backbone correctness", criterion_backbone},
      {"temperature-2 polyominoes", criterion_poly_t2},
      {"temperature-1 hole-free shapes", criterion_holefree_t1},
      {"temperature-1 shapes with holes", criterion_holes_t1},
      {"stage growth", criterion_stage_growth},
      {"confluence of accretion", criterion_confluence},
      {"mutation testing", criterion_mutations},
  };
  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    first = std::stoul(argv[1]) - 1;
    if (first >= criteria.size()) {
      std::cerr << "criterion number must be 1 to " << criteria.size() << '\n';
      return 2;
    }
    last = first + 1;
  }
  int failed = 0;
  for (std::size_t i = first; i < last; ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok()) ++failed;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.ok() ? "PASS" : "FAIL") << " ["
              << seconds_since(t0) << " s] " << o.summary() << std::endl;
  }
  std::cout << (last - first) - failed << " of " << last - first << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
