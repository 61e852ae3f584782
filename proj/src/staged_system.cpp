#include "stagecraft/staged_system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stagecraft {

std::vector<std::string> validate(const StagedSystem& sys) {
  std::vector<std::string> issues;
  auto where = [](int stage, int bin) {
    return "bin (" + std::to_string(stage) + "," + std::to_string(bin) + ")";
  };
  if (sys.stages.empty()) issues.push_back("system has no stages");
  for (int i = 0; i < static_cast<int>(sys.stages.size()); ++i) {
    const int stage = i + 1;
    if (sys.stages[i].empty()) issues.push_back("stage " + std::to_string(stage) + " has no bins");
    for (int j = 0; j < static_cast<int>(sys.stages[i].size()); ++j) {
      const BinSpec& b = sys.stages[i][j];
      if (b.adds.empty() && b.from.empty()) issues.push_back(where(stage, j) + " is dead: no tiles and no inputs");
      for (int t : b.adds)
        if (t < 0 || t >= sys.tiles.tile_count())
          issues.push_back(where(stage, j) + " adds unknown tile index " + std::to_string(t));
      for (const BinRef& r : b.from) {
        if (r.stage != stage - 1) {
          issues.push_back(where(stage, j) + " has an edge from stage " + std::to_string(r.stage) +
                           "; edges must come from stage " + std::to_string(stage - 1));
          continue;
        }
        if (r.stage < 1 || r.bin < 0 || r.bin >= static_cast<int>(sys.stages[r.stage - 1].size()))
          issues.push_back(where(stage, j) + " references missing " + where(r.stage, r.bin));
      }
    }
  }
  if (sys.output.empty()) issues.push_back("no bin feeds the output node");
  for (const BinRef& r : sys.output) {
    if (r.stage != static_cast<int>(sys.stages.size())) {
      issues.push_back("output edge from " + where(r.stage, r.bin) + " does not leave the last stage");
      continue;
    }
    if (r.bin < 0 || r.bin >= static_cast<int>(sys.stages.back().size()))
      issues.push_back("output references missing " + where(r.stage, r.bin));
  }
  if (sys.target && sys.target->scale < 1) issues.push_back("target scale must be positive");
  return issues;
}

ComplexityReport complexity_report(const StagedSystem& sys) {
  auto issues = validate(sys);
  if (!issues.empty()) throw InvalidSystemError("invalid system: " + issues.front());
  ComplexityReport r;
  r.glues = sys.tiles.glue_count();
  r.temperature = sys.tiles.temperature();
  r.scale = sys.target ? sys.target->scale : 1;
  std::set<int> used_tiles;
  for (const auto& stage : sys.stages) {
    int active = static_cast<int>(stage.size());
    r.bins = std::max(r.bins, active);
    r.bins_total += active;
    if (active > 0) ++r.stages;
    for (const auto& b : stage) used_tiles.insert(b.adds.begin(), b.adds.end());
  }
  std::set<GlueId> used_glues;
  for (int t : used_tiles)
    for (GlueId g : sys.tiles.tile(t).faces)
      if (g != kNullGlue) used_glues.insert(g);
  r.tiles = static_cast<int>(used_tiles.size());
  r.glues_used = static_cast<int>(used_glues.size());
  return r;
}

std::string format_table_row(const ComplexityReport& r) {
  std::ostringstream os;
  os << r.glues << " | " << r.tiles << " | " << r.bins << " | " << r.stages << " | " << r.temperature << " | "
     << r.scale << " | ";
  if (!r.fully_connected) os << "unverified";
  else os << (*r.fully_connected ? "full" : "partial");
  return os.str();
}

}  // namespace stagecraft
