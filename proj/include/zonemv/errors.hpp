#pragma once

#include <stdexcept>

namespace zonemv {

/// Two series that must share a time grid (or zone count) do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace zonemv
