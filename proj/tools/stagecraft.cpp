// stagecraft: compile shapes into staged tile assembly systems, run them, check them and
// draw them.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input or unmet precondition,
// 3 the simulator hit a cap (too many produced supertiles or unbounded growth).

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "stagecraft/compilers.hpp"
#include "stagecraft/fixtures.hpp"
#include "stagecraft/render.hpp"
#include "stagecraft/serialize.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kCapHit = 3;

// Thrown for usage problems found after argument parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Key/value report printed either as aligned text or, with --porcelain, as key=value lines.
class Report {
 public:
  explicit Report(bool porcelain) : porcelain_(porcelain) {}
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  void add_yes_no(const std::string& key, bool value) { add(key, std::string(value ? "yes" : "no")); }
  void print(std::ostream& os) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (porcelain_) os << k << '=' << v << '\n';
      else os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  }

 private:
  bool porcelain_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

const char* kTableHeader = "glues | tiles | bins | stages | tau | scale | connectivity";

void add_complexity(Report& rep, const ComplexityReport& c) {
  rep.add("glues", c.glues);
  rep.add("glues_used", c.glues_used);
  rep.add("tiles", c.tiles);
  rep.add("bins", c.bins);
  rep.add("bins_total", c.bins_total);
  rep.add("stages", c.stages);
  rep.add("temperature", c.temperature);
  rep.add("scale", c.scale);
  rep.add("connectivity", std::string(!c.fully_connected ? "unverified" : *c.fully_connected ? "full" : "partial"));
}

struct SimFlags {
  std::string mode = "auto";
  std::uint64_t seed = 0;
  std::size_t cap = 0;
  int trials = kDefaultTrials;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "Bin simulation: exhaustive, accrete or auto")
        ->check(CLI::IsMember({"exhaustive", "accrete", "auto"}));
    app->add_option("--seed", seed, "Seed for the random attachment orders")->capture_default_str();
    app->add_option("--cap", cap, "Produced-supertile cap per bin (default from STAGECRAFT_CAP_PRODUCED)");
    app->add_option("--trials", trials, "Random orders per accretion bin")->capture_default_str();
  }
  SimConfig config() const {
    SimConfig cfg = SimConfig::from_environment();
    cfg.mode = *parse_mode(mode);
    cfg.seed = seed;
    cfg.trials = trials;
    if (cap > 0) cfg.cap_produced = cap;
    return cfg;
  }
};

bool is_cap_error(SimError e) { return e == SimError::Exploded || e == SimError::Unbounded; }

int verdict_exit(const RunReport& run_report, const Verdict& v) {
  if (is_cap_error(run_report.error)) return kCapHit;
  return v.ok() ? kOk : kCheckFailed;
}

void add_verdict(Report& rep, const RunReport& r, const Verdict& v) {
  rep.add_yes_no("simulated", v.simulated);
  if (!r.ok()) rep.add("error", std::string(error_name(r.error)));
  rep.add_yes_no("unique", v.unique);
  rep.add_yes_no("shape_match", v.shape_match);
  rep.add_yes_no("fully_connected", v.fully_connected);
  rep.add_yes_no("within_declared", v.within_declared);
  rep.add("verdict", std::string(v.ok() ? "ok" : "failed"));
  for (std::size_t i = 0; i < v.notes.size(); ++i) rep.add("note" + std::to_string(i + 1), v.notes[i]);
}

// ---- compile --------------------------------------------------------------------------

struct CompileArgs {
  std::string input;
  std::string construction;
  int size = 0;
  std::string out;
  bool no_verify = false;
  bool porcelain = false;
  SimFlags sim;
};

StagedSystem compile_by_name(const CompileArgs& a) {
  const std::string& c = a.construction;
  if (c == "line" || c == "square-t2") {
    int n = a.size;
    if (n <= 0 && !a.input.empty()) {
      // A rectangle file gives its side as the size.
      Polyomino p = parse_ascii(read_file(a.input));
      n = c == "line" ? p.width() : std::max(p.width(), p.height());
    }
    if (n <= 0) throw UsageError(c + " needs --size or an input shape");
    return c == "line" ? compile_line(n) : compile_square_t2(n);
  }
  if (a.input.empty()) throw UsageError(c + " needs an input .poly file");
  Polyomino p = parse_ascii(read_file(a.input));
  if (c == "poly-t2") return compile_polyomino_t2(p);
  if (c == "holefree-t1") return compile_holefree_t1(p);
  if (c == "holes-t1") return compile_holes_t1(p);
  throw UsageError("unknown construction " + c);
}

int cmd_compile(const CompileArgs& a) {
  StagedSystem sys = compile_by_name(a);
  if (!a.out.empty()) write_output(a.out, serialize(sys));
  ComplexityReport c = complexity_report(sys);
  int code = kOk;
  Report rep(a.porcelain);
  rep.add("construction", sys.construction);
  if (!a.no_verify) {
    RunReport r = run(sys, a.sim.config());
    Verdict v = verify(r, sys);
    c = v.complexity;
    code = verdict_exit(r, v);
    rep.add("verdict", std::string(v.ok() ? "ok" : "failed"));
    for (std::size_t i = 0; i < v.notes.size(); ++i) rep.add("note" + std::to_string(i + 1), v.notes[i]);
  }
  add_complexity(rep, c);
  if (!a.out.empty()) rep.add("out", a.out);
  if (a.porcelain) {
    rep.print(std::cout);
  } else {
    std::cout << kTableHeader << '\n' << format_table_row(c) << "\n\n";
    rep.print(std::cout);
  }
  return code;
}

// ---- simulate / verify / metrics ------------------------------------------------------

StagedSystem load_system(const std::string& path) { return deserialize(read_file(path)); }

struct RunArgs {
  std::string system;
  std::string target;
  int scale = 0;
  std::string format = "ascii";
  std::string out;
  bool porcelain = false;
  bool verify_too = false;
  SimFlags sim;
};

int cmd_simulate(const RunArgs& a) {
  StagedSystem sys = load_system(a.system);
  RunReport r = run(sys, a.sim.config());
  Report rep(a.porcelain);
  rep.add("stages", static_cast<long long>(r.bins.size()));
  std::size_t produced = 0;
  for (const auto& stage : r.bins)
    for (const BinResult& b : stage) produced += b.produced_count;
  rep.add("produced_total", static_cast<long long>(produced));
  rep.add("error", std::string(error_name(r.error)));
  if (r.error_bin) rep.add("error_bin", std::to_string(r.error_bin->stage) + "." + std::to_string(r.error_bin->bin));
  if (!r.detail.empty()) rep.add("detail", r.detail);
  rep.add("terminal_outputs", static_cast<long long>(r.output.size()));
  rep.print(std::cout);
  if (r.output.size() == 1 && !a.porcelain) {
    if (a.format == "svg") write_output(a.out, render_svg(r.output.front(), sys.tiles));
    else write_output(a.out, render_ascii(r.output.front()));
  }
  if (is_cap_error(r.error)) return kCapHit;
  return r.ok() && r.output.size() == 1 ? kOk : kCheckFailed;
}

int cmd_verify(const RunArgs& a) {
  StagedSystem sys = load_system(a.system);
  if (!a.target.empty()) sys.target = TargetSpec{parse_ascii(read_file(a.target)), a.scale > 0 ? a.scale : 1};
  else if (a.scale > 0 && sys.target) sys.target->scale = a.scale;
  if (!sys.target) throw UsageError("verify needs a target: the system declares none and --target is missing");
  RunReport r = run(sys, a.sim.config());
  Verdict v = verify(r, sys);
  Report rep(a.porcelain);
  add_verdict(rep, r, v);
  add_complexity(rep, v.complexity);
  rep.print(std::cout);
  return verdict_exit(r, v);
}

int cmd_metrics(const RunArgs& a) {
  StagedSystem sys = load_system(a.system);
  ComplexityReport c = complexity_report(sys);
  int code = kOk;
  if (a.verify_too) {
    RunReport r = run(sys, a.sim.config());
    Verdict v = verify(r, sys);
    c = v.complexity;
    code = verdict_exit(r, v);
  }
  Report rep(a.porcelain);
  rep.add("construction", sys.construction);
  add_complexity(rep, c);
  for (const auto& [k, v] : sys.declared) rep.add("declared_" + k, v);
  if (!a.porcelain) std::cout << kTableHeader << '\n' << format_table_row(c) << "\n\n";
  rep.print(std::cout);
  return code;
}

int cmd_render(const RunArgs& a) {
  const bool svg = a.format == "svg";
  if (ends_with(a.system, ".poly")) {
    Polyomino p = parse_ascii(read_file(a.system));
    if (a.scale > 1) p = scale(p, a.scale);
    write_output(a.out, svg ? render_svg(p) : render_ascii(p));
    return kOk;
  }
  StagedSystem sys = load_system(a.system);
  RunReport r = run(sys, a.sim.config());
  if (is_cap_error(r.error)) {
    std::cerr << "error: " << error_name(r.error) << ": " << r.detail << '\n';
    return kCapHit;
  }
  if (!r.ok() || r.output.size() != 1) {
    std::cerr << "error: the system does not produce a unique supertile (" << r.output.size() << " outputs)\n";
    return kCheckFailed;
  }
  write_output(a.out, svg ? render_svg(r.output.front(), sys.tiles) : render_ascii(r.output.front()));
  return kOk;
}

// ---- demo -----------------------------------------------------------------------------

// Runs the reference instances and checks each one's expected outcome.
int cmd_demo(bool porcelain, const SimFlags& flags) {
  struct Case {
    std::string name;
    std::function<std::string()> run;  // empty string on success, else the reason
  };
  const SimConfig cfg = flags.config();
  auto expect_ok = [cfg](const StagedSystem& sys, int max_glues) -> std::string {
    Verdict v = simulate_and_verify(sys, cfg);
    if (!v.ok()) return v.notes.empty() ? "verification failed" : v.notes.front();
    if (max_glues > 0 && v.complexity.glues > max_glues) return "uses " + std::to_string(v.complexity.glues) + " glues";
    return "";
  };
  std::vector<Case> cases;
  cases.push_back({"line-8", [&] { return expect_ok(compile_line(8), 0); }});
  cases.push_back({"square-t2-8", [&] {
                     StagedSystem sys = compile_square_t2(8);
                     Verdict v = simulate_and_verify(sys, cfg);
                     std::string row = format_table_row(v.complexity);
                     if (!v.ok()) return std::string("verification failed");
                     if (row.rfind("4 | 14 | 7 | ", 0) != 0 || !ends_with(row, " | 2 | 1 | full"))
                       return "table row " + row;
                     return std::string();
                   }});
  for (const std::string& name : fixtures::names())
    cases.push_back({"poly-t2-" + name, [&, name] { return expect_ok(compile_polyomino_t2(*fixtures::by_name(name)), 7); }});
  for (const char* name : {"pixel", "L", "T", "staircase"})
    cases.push_back({std::string("holefree-t1-") + name,
                     [&, name] { return expect_ok(compile_holefree_t1(*fixtures::by_name(name)), 18); }});
  cases.push_back({"holefree-t1-rejects-annulus", [] {
                     try {
                       compile_holefree_t1(fixtures::annulus());
                     } catch (const PreconditionError& e) {
                       return std::string(e.what()) == "input has 1 hole" ? std::string() : std::string(e.what());
                     }
                     return std::string("accepted a shape with a hole");
                   }});
  for (const char* name : {"annulus", "two-holes"})
    cases.push_back({std::string("holes-t1-") + name,
                     [&, name] { return expect_ok(compile_holes_t1(*fixtures::by_name(name)), 20); }});
  cases.push_back({"mutated-glue-fails", [&] {
                     StagedSystem sys = compile_line(8);
                     // Drop a glue from a tile that ends up in the output.
                     const int tile = run(sys, cfg).output.at(0).cells().front().tile;
                     const TileType& t = sys.tiles.tile(tile);
                     for (int d = 0; d < 4; ++d)
                       if (t.faces[d] != kNullGlue) {
                         sys.tiles.set_face(tile, static_cast<Dir>(d), kNullGlue);
                         break;
                       }
                     return simulate_and_verify(sys, cfg).ok() ? std::string("mutation still verifies") : std::string();
                   }});
  cases.push_back({"cap-exceeded", [] {
                     SimConfig tight;
                     tight.cap_produced = 1;
                     RunReport r = run(compile_line(8), tight);
                     return r.error == SimError::Exploded ? std::string() : std::string("no cap error");
                   }});

  int failures = 0;
  for (const Case& c : cases) {
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (!why.empty()) ++failures;
    if (porcelain) std::cout << "demo." << c.name << '=' << (why.empty() ? "pass" : "fail") << '\n';
    else std::cout << (why.empty() ? "PASS " : "FAIL ") << c.name << (why.empty() ? "" : ": " + why) << '\n';
  }
  if (porcelain) std::cout << "demo.failures=" << failures << '\n';
  else std::cout << failures << " of " << cases.size() << " cases failed\n";
  return failures == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staged tile assembly: compile shapes, simulate, verify and render systems"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile a shape into a staged system");
  compile->add_option("input", compile_args.input, "Shape file (.poly)");
  compile->add_option("--construction,-c", compile_args.construction, "Construction to use")
      ->required()
      ->check(CLI::IsMember({"line", "square-t2", "poly-t2", "holefree-t1", "holes-t1"}));
  compile->add_option("--size,-n", compile_args.size, "Length or side for line and square-t2");
  compile->add_option("--out,-o", compile_args.out, "Write the system (.stas.json) here");
  compile->add_flag("--no-verify", compile_args.no_verify, "Skip simulating the compiled system");
  compile->add_flag("--porcelain", compile_args.porcelain, "key=value output");
  compile_args.sim.attach(compile);

  RunArgs sim_args, verify_args, metrics_args, render_args;
  auto* simulate = app.add_subcommand("simulate", "Run a system and show its output");
  simulate->add_option("system", sim_args.system, "System file (.stas.json)")->required();
  simulate->add_option("--format", sim_args.format, "Output picture format")->check(CLI::IsMember({"ascii", "svg"}));
  simulate->add_option("--out,-o", sim_args.out, "Write the picture here instead of stdout");
  simulate->add_flag("--porcelain", sim_args.porcelain, "key=value output");
  sim_args.sim.attach(simulate);

  auto* verify_cmd = app.add_subcommand("verify", "Check that a system builds its target");
  verify_cmd->add_option("system", verify_args.system, "System file (.stas.json)")->required();
  verify_cmd->add_option("--target", verify_args.target, "Target shape (.poly), overriding the declared one");
  verify_cmd->add_option("--scale", verify_args.scale, "Scale factor of the target");
  verify_cmd->add_flag("--porcelain", verify_args.porcelain, "key=value output");
  verify_args.sim.attach(verify_cmd);

  auto* metrics = app.add_subcommand("metrics", "Report glue, tile, bin and stage counts");
  metrics->add_option("system", metrics_args.system, "System file (.stas.json)")->required();
  metrics->add_flag("--verify", metrics_args.verify_too, "Simulate to fill in connectivity");
  metrics->add_flag("--porcelain", metrics_args.porcelain, "key=value output");
  metrics_args.sim.attach(metrics);

  auto* render = app.add_subcommand("render", "Draw a shape or the output of a system");
  render->add_option("input", render_args.system, "Shape (.poly) or system (.stas.json)")->required();
  render->add_option("--format", render_args.format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--scale", render_args.scale, "Scale a shape before drawing it");
  render->add_option("--out,-o", render_args.out, "Write here instead of stdout");
  render_args.sim.attach(render);

  bool demo_porcelain = false;
  SimFlags demo_flags;
  auto* demo = app.add_subcommand("demo", "Run the reference instances and check their outcomes");
  demo->add_flag("--porcelain", demo_porcelain, "key=value output");
  demo_flags.attach(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*compile) return cmd_compile(compile_args);
    if (*simulate) return cmd_simulate(sim_args);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*metrics) return cmd_metrics(metrics_args);
    if (*render) return cmd_render(render_args);
    if (*demo) return cmd_demo(demo_porcelain, demo_flags);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidSystemError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kBadInput;
}
