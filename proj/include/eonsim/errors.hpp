#pragma once

#include <stdexcept>
#include <string>

namespace eonsim {

// Bad user-supplied values (grid size, demand, sweep parameters).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Topology file could not be loaded; message names the offending line.
struct load_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An API precondition was broken (length mismatch, range out of bounds).
// Signals a caller bug, e.g. intersecting bitmaps of a non-normalized network.
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

// Spectrum bookkeeping went inconsistent: double allocation, double release,
// overlap at commit time. These are unreachable when the RSA engine is
// correct; a simulation run aborts on the first one.
struct engine_violation : std::logic_error {
  using std::logic_error::logic_error;
};

// A metric was requested over an empty observation window.
struct metric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eonsim
