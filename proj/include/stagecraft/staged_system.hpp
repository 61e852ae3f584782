// Mix graphs, bin contents, validation and complexity accounting.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stagecraft/polyomino.hpp"
#include "stagecraft/tiles.hpp"

namespace stagecraft {

// Reference to bin `bin` of stage `stage`; stages are numbered from 1.
struct BinRef {
  int stage = 0;
  int bin = 0;
  friend bool operator==(const BinRef&, const BinRef&) = default;
  friend bool operator<(const BinRef& a, const BinRef& b) {
    return a.stage != b.stage ? a.stage < b.stage : a.bin < b.bin;
  }
};

struct BinSpec {
  std::vector<int> adds;     // tile type indices mixed into this bin
  std::vector<BinRef> from;  // bins of the previous stage whose terminal sets flow in
  friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

struct TargetSpec {
  Polyomino shape;
  int scale = 1;
  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

struct StagedSystem {
  TileSystem tiles{1};
  std::vector<std::vector<BinSpec>> stages;  // stages[i] holds the bins of stage i+1
  std::vector<BinRef> output;                // bins of the last stage feeding the output node
  std::optional<TargetSpec> target;
  std::string construction;                  // free-form name of the producing compiler
  std::map<std::string, int> declared;       // declared complexity bounds, e.g. "glues" -> 6

  int stage_count() const { return static_cast<int>(stages.size()); }
  const BinSpec& bin(BinRef r) const { return stages.at(r.stage - 1).at(r.bin); }
  friend bool operator==(const StagedSystem&, const StagedSystem&) = default;
};

// Structural problems; an empty list means the system is well formed.
std::vector<std::string> validate(const StagedSystem& sys);

struct ComplexityReport {
  int glues = 0;          // declared non-null labels
  int glues_used = 0;     // distinct non-null labels on tiles that are mixed into some bin
  int tiles = 0;          // distinct tile types mixed into some bin
  int bins = 0;           // maximum number of bins in one stage
  int bins_total = 0;     // bins over all stages
  int stages = 0;
  int temperature = 1;
  int scale = 1;
  std::optional<bool> fully_connected;  // filled in by verification
};

class InvalidSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InvalidSystemError when validate() reports problems.
ComplexityReport complexity_report(const StagedSystem& sys);

// Table row "glues | tiles | bins | stages | tau | scale | connectivity".
std::string format_table_row(const ComplexityReport& r);

}  // namespace stagecraft
