#pragma once

#include <stdexcept>

namespace eis {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid boundary parameterization (r >= r_max, degenerate nodes, ...).
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Direct-solver failure (ill-conditioned Nystrom system, NaN far field).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InversionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eis
