// Named example shapes and a seeded random shape generator.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stagecraft/polyomino.hpp"

namespace stagecraft::fixtures {

Polyomino single_pixel();
Polyomino l_shape();       // 3 x 3 L
Polyomino t_shape();       // 3 x 3 T
Polyomino annulus();       // 3 x 3 ring with one hole
Polyomino two_holes();     // 5 x 3 frame with two holes
Polyomino figure();        // hole-free shape with several branches
Polyomino staircase(int steps);

// Lookup by the names listed in names(); nullopt when unknown.
std::optional<Polyomino> by_name(const std::string& name);
std::vector<std::string> names();

struct RandomShapeOptions {
  int box = 6;           // width and height bound
  int min_area = 1;
  int max_area = 0;      // 0: box * box
  bool allow_holes = true;
};

// Connected, not pinched, reproducible for a given seed.
Polyomino random_polyomino(std::uint64_t seed, const RandomShapeOptions& opt = {});

}  // namespace stagecraft::fixtures
