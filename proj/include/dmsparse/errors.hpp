#pragma once

#include <stdexcept>
#include <string>

namespace dmsparse {

// File and stream problems (missing file, bad magic, truncation).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data-dependent failures detected mid-computation: relaxation bound
// violations, rank-deficient refits, and the like. Distinct from
// std::invalid_argument, which is reserved for precondition violations
// that are checkable before any work starts.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dmsparse
