#include "stagecraft/simulator.hpp"

#include <algorithm>
#include <bitset>
#include <climits>
#include <cstdlib>
#include <random>
#include <unordered_set>

namespace stagecraft {

const char* mode_name(SimMode m) {
  switch (m) {
    case SimMode::Exhaustive: return "exhaustive";
    case SimMode::Accrete: return "accrete";
    case SimMode::Auto: return "auto";
  }
  return "?";
}

std::optional<SimMode> parse_mode(const std::string& s) {
  if (s == "exhaustive") return SimMode::Exhaustive;
  if (s == "accrete") return SimMode::Accrete;
  if (s == "auto") return SimMode::Auto;
  return std::nullopt;
}

const char* error_name(SimError e) {
  switch (e) {
    case SimError::None: return "none";
    case SimError::Exploded: return "exploded";
    case SimError::Unbounded: return "unbounded";
    case SimError::NonConfluent: return "non-confluent";
    case SimError::SingletonsCombine: return "singleton-pair-combinable";
  }
  return "?";
}

SimConfig SimConfig::from_environment() {
  SimConfig cfg;
  if (const char* env = std::getenv("STAGECRAFT_CAP_PRODUCED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) cfg.cap_produced = static_cast<std::size_t>(v);
  }
  return cfg;
}

namespace {

// Exposed (glue, direction) pairs of a supertile. Two supertiles can only combine when one
// exposes (g, d) and the other exposes (g, opposite d).
class Signature {
 public:
  static constexpr int kMaxGlues = 255;

  Signature(const Supertile& s, const TileSystem& ts) {
    if (ts.glue_count() > kMaxGlues) {
      exact_ = false;
      return;
    }
    for (const Cell& c : s.cells()) {
      const TileType& t = ts.tile(c.tile);
      for (Dir d : kDirs) {
        GlueId g = t.face(d);
        if (g == kNullGlue || s.at(step({c.x, c.y}, d)) >= 0) continue;
        exposed_.set(static_cast<std::size_t>(g) * 4 + static_cast<int>(d));
        mirrored_.set(static_cast<std::size_t>(g) * 4 + static_cast<int>(opposite(d)));
      }
    }
  }
  bool may_bind(const Signature& o) const { return !exact_ || !o.exact_ || (exposed_ & o.mirrored_).any(); }

 private:
  std::bitset<(kMaxGlues + 1) * 4> exposed_, mirrored_;
  bool exact_ = true;
};

std::vector<Supertile> sorted(std::vector<Supertile> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

BinResult saturate_bin(const std::vector<Supertile>& contents, const TileSystem& ts, std::size_t cap_produced,
                       int cap_size) {
  if (cap_size <= 0) cap_size = INT_MAX;
  BinResult res;
  res.mode_used = SimMode::Exhaustive;
  std::unordered_set<Supertile, SupertileHash> seen;
  std::vector<Supertile> all;
  std::vector<Signature> sigs;
  std::vector<FaceIndex> faces;
  std::vector<char> combined;  // took part in at least one combination
  auto admit = [&](const Supertile& s) {
    if (!seen.insert(s).second) return true;
    if (s.size() > cap_size) {
      res.error = SimError::Unbounded;
      res.detail = "supertile of size " + std::to_string(s.size()) + " exceeds size cap " + std::to_string(cap_size);
      return false;
    }
    all.push_back(s);
    sigs.emplace_back(s, ts);
    faces.emplace_back(s, ts);
    combined.push_back(0);
    if (all.size() > cap_produced) {
      res.error = SimError::Exploded;
      res.detail = "produced set exceeds cap " + std::to_string(cap_produced);
      return false;
    }
    return true;
  };
  for (const Supertile& s : contents)
    if (!admit(s)) break;

  for (std::size_t next = 0; res.ok() && next < all.size(); ++next) {
    for (std::size_t i = 0; i <= next && res.ok(); ++i) {
      if (!sigs[next].may_bind(sigs[i])) continue;
      // admit() may grow the vectors, so the combination results are computed first.
      std::vector<Supertile> made = combine(all[next], faces[next], all[i], faces[i], ts);
      if (!made.empty()) combined[next] = combined[i] = 1;
      for (const Supertile& r : made)
        if (!admit(r)) break;
    }
  }
  res.produced_count = all.size();
  if (!res.ok()) return res;

  // Every unordered pair, self pairs included, was tried above, so a supertile that never
  // combined is terminal.
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!combined[i]) res.terminal.push_back(all[i]);
  res.terminal = sorted(std::move(res.terminal));
  res.produced = sorted(std::move(all));
  return res;
}

BinResult accrete_fill(const Supertile& seed, const std::vector<int>& singletons, const TileSystem& ts, int trials,
                       std::uint64_t rng_seed) {
  BinResult res;
  res.mode_used = SimMode::Accrete;
  std::vector<int> types = singletons;
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());

  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = i; j < types.size(); ++j)
      if (can_combine(Supertile::single(types[i]), Supertile::single(types[j]), ts)) {
        res.error = SimError::SingletonsCombine;
        res.detail = "tiles " + ts.tile(types[i]).name + " and " + ts.tile(types[j]).name + " combine directly";
        return res;
      }
  if (can_combine(seed, seed, ts)) {
    res.error = SimError::Unbounded;
    res.detail = "seed supertile combines with a copy of itself";
    return res;
  }

  const int tau = ts.temperature();
  std::vector<Supertile> finals;
  std::vector<char> attached(types.size(), 0);
  std::string conflict;
  for (int trial = 0; trial < std::max(trials, 1); ++trial) {
    std::mt19937_64 rng(rng_seed + static_cast<std::uint64_t>(trial));
    PointMap<int> cells;
    for (const Cell& c : seed.cells()) cells[{c.x, c.y}] = c.tile;

    // Attachable sites with the types that fit there, kept in sync as tiles land.
    std::vector<GridPoint> ready;
    PointMap<std::size_t> ready_pos;
    PointMap<int> ready_type;
    auto fitting = [&](GridPoint site) {
      std::vector<int> fit;
      for (std::size_t k = 0; k < types.size(); ++k) {
        int total = 0;
        for (Dir d : kDirs) {
          auto it = cells.find(step(site, d));
          if (it != cells.end()) total += ts.bond(types[k], d, it->second);
        }
        if (total >= tau) fit.push_back(static_cast<int>(k));
      }
      return fit;
    };
    auto refresh = [&](GridPoint site) {
      if (cells.count(site)) return;
      auto fit = fitting(site);
      if (fit.size() > 1 && conflict.empty()) {
        conflict = "site (" + std::to_string(site.x) + "," + std::to_string(site.y) + ") admits " +
                   std::to_string(fit.size()) + " tile types";
      }
      auto pos = ready_pos.find(site);
      if (fit.empty()) {
        if (pos != ready_pos.end()) {
          std::size_t idx = pos->second;
          ready_pos.erase(pos);
          ready_type.erase(site);
          if (idx + 1 != ready.size()) {
            ready[idx] = ready.back();
            ready_pos[ready[idx]] = idx;
          }
          ready.pop_back();
        }
        return;
      }
      if (pos == ready_pos.end()) {
        ready_pos[site] = ready.size();
        ready.push_back(site);
      }
      ready_type[site] = fit.front();
    };
    std::vector<GridPoint> initial;
    for (const Cell& c : seed.cells())
      for (Dir d : kDirs) initial.push_back(step({c.x, c.y}, d));
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    for (GridPoint p : initial) refresh(p);

    while (!ready.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      GridPoint site = ready[pick(rng)];
      int k = ready_type[site];
      cells[site] = types[k];
      attached[k] = 1;
      auto pos = ready_pos.find(site);
      if (pos != ready_pos.end()) {
        std::size_t idx = pos->second;
        ready_pos.erase(pos);
        ready_type.erase(site);
        if (idx + 1 != ready.size()) {
          ready[idx] = ready.back();
          ready_pos[ready[idx]] = idx;
        }
        ready.pop_back();
      }
      for (Dir d : kDirs) refresh(step(site, d));
    }
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (const auto& [p, t] : cells) out.push_back(Cell{p.x, p.y, t});
    Supertile fin = Supertile::from_cells(std::move(out));
    if (std::find(finals.begin(), finals.end(), fin) == finals.end()) finals.push_back(std::move(fin));
  }

  res.produced_count = finals.size();
  for (const Supertile& f : finals) {
    if (can_combine(f, f, ts)) {
      res.error = SimError::Unbounded;
      res.detail = "filled supertile combines with a copy of itself";
      return res;
    }
  }
  res.terminal = finals;
  for (std::size_t k = 0; k < types.size(); ++k)
    if (!attached[k]) res.terminal.push_back(Supertile::single(types[k]));
  res.terminal = sorted(std::move(res.terminal));
  if (finals.size() > 1) {
    res.error = SimError::NonConfluent;
    res.detail = std::to_string(finals.size()) + " distinct results over " + std::to_string(trials) + " orders";
  } else if (!conflict.empty()) {
    res.error = SimError::NonConfluent;
    res.detail = conflict;
  }
  return res;
}

RunReport run(const StagedSystem& sys, const SimConfig& cfg) {
  RunReport rep;
  int cap_size = cfg.cap_size;
  if (cap_size <= 0 && sys.target) {
    long long area = static_cast<long long>(sys.target->shape.size()) * sys.target->scale * sys.target->scale;
    cap_size = static_cast<int>(std::min<long long>(4 * area, INT_MAX));
  }
  for (int i = 0; i < sys.stage_count(); ++i) {
    rep.bins.emplace_back();
    for (int j = 0; j < static_cast<int>(sys.stages[i].size()); ++j) {
      const BinSpec& spec = sys.stages[i][j];
      std::vector<Supertile> contents;
      for (const BinRef& r : spec.from) {
        const auto& t = rep.bins.at(r.stage - 1).at(r.bin).terminal;
        contents.insert(contents.end(), t.begin(), t.end());
      }
      std::vector<int> singles;
      for (int t : spec.adds) {
        contents.push_back(Supertile::single(t));
        singles.push_back(t);
      }
      std::sort(contents.begin(), contents.end());
      contents.erase(std::unique(contents.begin(), contents.end()), contents.end());

      std::vector<const Supertile*> large;
      for (const Supertile& s : contents)
        if (s.size() > 1) large.push_back(&s);
      bool accretable = large.size() == 1 && contents.size() > 1;
      SimMode mode = cfg.mode;
      if (mode == SimMode::Auto) mode = accretable ? SimMode::Accrete : SimMode::Exhaustive;

      BinResult br;
      if (mode == SimMode::Accrete && accretable) {
        std::vector<int> all_singles;
        for (const Supertile& s : contents)
          if (s.size() == 1) all_singles.push_back(s.cells()[0].tile);
        br = accrete_fill(*large.front(), all_singles, sys.tiles, cfg.trials, cfg.seed);
        if (cap_size > 0)
          for (const Supertile& s : br.terminal)
            if (br.ok() && s.size() > cap_size) {
              br.error = SimError::Unbounded;
              br.detail = "supertile exceeds size cap " + std::to_string(cap_size);
            }
      } else {
        br = saturate_bin(contents, sys.tiles, cfg.cap_produced, cap_size);
      }
      if (!cfg.keep_produced) br.produced.clear();
      bool failed = !br.ok();
      if (failed) {
        rep.error = br.error;
        rep.error_bin = BinRef{i + 1, j};
        rep.detail = br.detail;
      }
      rep.bins.back().push_back(std::move(br));
      if (failed) return rep;
    }
  }
  for (const BinRef& r : sys.output) {
    const auto& t = rep.bins.at(r.stage - 1).at(r.bin).terminal;
    rep.output.insert(rep.output.end(), t.begin(), t.end());
  }
  rep.output = sorted(std::move(rep.output));
  rep.output.erase(std::unique(rep.output.begin(), rep.output.end()), rep.output.end());
  return rep;
}

Verdict verify(const RunReport& report, const StagedSystem& sys) {
  Verdict v;
  v.complexity = complexity_report(sys);
  v.simulated = report.ok();
  if (!v.simulated) {
    std::string where = report.error_bin ? " in bin (" + std::to_string(report.error_bin->stage) + "," +
                                               std::to_string(report.error_bin->bin) + ")"
                                         : "";
    v.notes.push_back(std::string("simulation failed: ") + error_name(report.error) + where + ": " + report.detail);
  }
  v.unique = v.simulated && report.output.size() == 1;
  if (v.simulated && !v.unique) v.notes.push_back("non-unique: " + std::to_string(report.output.size()) + " terminal supertiles");
  if (v.unique) {
    const Supertile& t = report.output.front();
    if (sys.target) {
      v.shape_match = shape_of(t) == scale(sys.target->shape, sys.target->scale);
      if (!v.shape_match) v.notes.push_back("shape mismatch against the scaled target");
    } else {
      v.notes.push_back("no declared target");
    }
    v.fully_connected = is_fully_connected(t, sys.tiles);
    if (!v.fully_connected) v.notes.push_back("disconnected: some adjacent tiles share no positive glue");
    v.complexity.fully_connected = v.fully_connected;
  }
  auto check = [&](const char* key, int measured) {
    auto it = sys.declared.find(key);
    if (it != sys.declared.end() && measured > it->second) {
      v.within_declared = false;
      v.notes.push_back(std::string(key) + " " + std::to_string(measured) + " exceeds declared " +
                        std::to_string(it->second));
    }
  };
  check("glues", v.complexity.glues);
  check("tiles", v.complexity.tiles);
  check("bins", v.complexity.bins);
  return v;
}

Verdict simulate_and_verify(const StagedSystem& sys, const SimConfig& cfg) { return verify(run(sys, cfg), sys); }

}  // namespace stagecraft
