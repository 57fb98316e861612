#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Base class for all library errors; catch this to handle anything thrown here.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value passed to an operation violates its stated precondition
// (non-finite bounds, non-positive widths, region outside the box, ...).
struct parameter_error : error {
  using error::error;
};

// Two objects that must live on the same grid (or have the same shape) do not.
struct shape_error : error {
  using error::error;
};

// A combination of settings is inconsistent (e.g. a boundary condition that
// does not apply to the requested operator family).
struct config_error : error {
  using error::error;
};

// A computation would exceed a documented size bound (dense matrices beyond
// the supported dimension).
struct resource_error : error {
  using error::error;
};

// A kernel or operator cannot be resolved on the requested grid
// (sampling condition violated).
struct resolution_error : error {
  using error::error;
};

// A fit was requested on data that is numerically indistinguishable from zero.
struct insufficient_signal_error : error {
  using error::error;
};

// Output could not be written, or a table contains non-finite values.
struct io_error : error {
  using error::error;
};

}  // namespace zeno
