#pragma once

#include <stdexcept>

namespace lpembed {

// Invalid input data: bad files, out-of-range ids, malformed flags.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: solver breakdown, non-convergence, degenerate spectra.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lpembed
