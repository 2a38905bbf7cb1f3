#pragma once

#include <stdexcept>
#include <string>

namespace hs {

// Raised for precondition violations and malformed input.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hs
