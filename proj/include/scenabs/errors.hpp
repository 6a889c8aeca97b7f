#pragma once

#include <stdexcept>
#include <string>

namespace scenabs {

/// Invalid user input: bad dimensions, parameters outside their domain,
/// malformed configuration.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Inner convex solver could not produce a usable point.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Constraint-removal loop found no active constraint whose removal
/// improves the objective. Carries the partial solution upstream.
struct stall_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace scenabs
