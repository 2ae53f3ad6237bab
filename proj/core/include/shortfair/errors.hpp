#pragma once

#include <stdexcept>

namespace shortfair {

// Bad user-supplied configuration (counts, bands, sampler params, config files).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A demand cannot be met at the requested window length (or at any).
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem size exceeds what an exact routine is built to handle.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace shortfair
