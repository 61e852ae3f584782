#include <doctest.h>

#include "stagecraft/compilers.hpp"
#include "stagecraft/simulator.hpp"

using namespace stagecraft;

TEST_CASE("line: small lengths assemble uniquely with the declared counts") {
  for (int n = 1; n <= 20; ++n) {
    CAPTURE(n);
    StagedSystem sys = compile_line(n);
    CHECK(validate(sys).empty());
    Verdict v = simulate_and_verify(sys);
    CHECK(v.ok());
    CHECK(v.complexity.glues == 3);
    CHECK(v.complexity.tiles <= 6);
    CHECK(v.complexity.bins <= 7);
  }
}

TEST_CASE("line: n=1 is a single tile in a single stage") {
  ComplexityReport r = complexity_report(compile_line(1));
  CHECK(r.stages == 1);
  CHECK(r.tiles == 1);
}

TEST_CASE("line: n=16 uses all six tiles") {
  ComplexityReport r = complexity_report(compile_line(16));
  CHECK(r.glues == 3);
  CHECK(r.tiles == 6);
  CHECK(r.bins <= 7);
}

TEST_CASE("square: sides 1..8 are unique and fully connected") {
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    StagedSystem sys = compile_square_t2(n);
    CHECK(validate(sys).empty());
    Verdict v = simulate_and_verify(sys);
    CHECK(v.ok());
    CHECK(v.complexity.glues == 4);
    CHECK(v.complexity.tiles <= 14);
    CHECK(v.complexity.bins <= 7);
  }
}

TEST_CASE("square: exhaustive fill for small sides matches accretion") {
  for (int n = 2; n <= 4; ++n) {
    SimConfig cfg;
    cfg.mode = SimMode::Exhaustive;
    Verdict v = simulate_and_verify(compile_square_t2(n), cfg);
    CHECK(v.ok());
  }
}

TEST_CASE("stage growth of lines and squares is logarithmic") {
  for (int n : {4, 8, 16}) {
    CHECK(complexity_report(compile_square_t2(2 * n)).stages - complexity_report(compile_square_t2(n)).stages <= 4);
    CHECK(complexity_report(compile_line(2 * n)).stages - complexity_report(compile_line(n)).stages <= 2);
  }
}
