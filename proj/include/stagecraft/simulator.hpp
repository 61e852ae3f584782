// Bin-by-bin execution of staged systems and verification of the output.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stagecraft/staged_system.hpp"
#include "stagecraft/tiles.hpp"

namespace stagecraft {

enum class SimMode { Exhaustive, Accrete, Auto };
const char* mode_name(SimMode m);
std::optional<SimMode> parse_mode(const std::string& s);

constexpr std::size_t kDefaultCapProduced = 100000;
constexpr int kDefaultTrials = 10;

struct SimConfig {
  SimMode mode = SimMode::Auto;
  std::size_t cap_produced = kDefaultCapProduced;
  int cap_size = 0;  // 0: four times the scaled target area, or unlimited without a target
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  bool keep_produced = false;  // retain every produced set in run() reports

  // Defaults, with cap_produced taken from STAGECRAFT_CAP_PRODUCED when set.
  static SimConfig from_environment();
};

enum class SimError { None, Exploded, Unbounded, NonConfluent, SingletonsCombine };
const char* error_name(SimError e);

struct BinResult {
  std::vector<Supertile> produced;  // P', sorted; may be empty when not retained
  std::size_t produced_count = 0;
  std::vector<Supertile> terminal;  // P, sorted
  SimMode mode_used = SimMode::Exhaustive;
  SimError error = SimError::None;
  std::string detail;
  bool ok() const { return error == SimError::None; }
};

// Least fixed point of pairwise combination (self pairs included) and the terminal subset.
BinResult saturate_bin(const std::vector<Supertile>& contents, const TileSystem& ts,
                       std::size_t cap_produced = kDefaultCapProduced, int cap_size = 0);

// Grows `seed` by attaching single tiles one at a time in `trials` random orders.
// Reports NonConfluent when orders disagree or some site admits two tile types.
BinResult accrete_fill(const Supertile& seed, const std::vector<int>& singletons, const TileSystem& ts,
                       int trials = kDefaultTrials, std::uint64_t rng_seed = 0);

struct RunReport {
  std::vector<std::vector<BinResult>> bins;  // indexed [stage-1][bin]
  std::vector<Supertile> output;             // terminal supertiles reaching the output node
  SimError error = SimError::None;
  std::optional<BinRef> error_bin;
  std::string detail;
  bool ok() const { return error == SimError::None; }
};

// Never throws for simulation failures; they are recorded with the failing bin.
RunReport run(const StagedSystem& sys, const SimConfig& cfg = {});

struct Verdict {
  bool simulated = false;   // the run finished without errors
  bool unique = false;      // exactly one terminal supertile reached the output
  bool shape_match = false;
  bool fully_connected = false;
  bool within_declared = true;  // measured complexity never exceeds meta.declared bounds
  ComplexityReport complexity;
  std::vector<std::string> notes;
  bool ok() const { return simulated && unique && shape_match && fully_connected; }
};

Verdict verify(const RunReport& report, const StagedSystem& sys);
// Convenience: run and verify.
Verdict simulate_and_verify(const StagedSystem& sys, const SimConfig& cfg = {});

}  // namespace stagecraft
