#pragma once

#include <stdexcept>
#include <string>

namespace mext {

// Error taxonomy mirrors the CLI exit-code contract:
// config/parse -> 2, guard/capability -> 3, anything mathematical is a
// report entry rather than an exception.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

struct config_error : error {
  using error::error;
};

// Shape mismatches between carriers/maps (wrong domain, ragged data).
struct shape_error : error {
  using error::error;
};

// A requested computation exceeds the configured enumeration bounds.
struct guard_error : error {
  using error::error;
};

// The monad cannot do what was asked (e.g. enumerate a prob carrier).
struct capability_error : error {
  using error::error;
};

// Broken internal invariant; must never fire on valid inputs.
struct internal_error : error {
  using error::error;
};

}  // namespace mext
