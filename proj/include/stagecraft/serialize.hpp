// JSON persistence for staged systems (.stas.json files).
#pragma once

#include <stdexcept>
#include <string>

#include "stagecraft/staged_system.hpp"

namespace stagecraft {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stable key order: temperature, glues, tiles, mixgraph, target, meta.
std::string serialize(const StagedSystem& sys);
// Throws FormatError naming the offending section or field.
StagedSystem deserialize(const std::string& text);

}  // namespace stagecraft
