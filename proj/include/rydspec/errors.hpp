#pragma once

#include <stdexcept>

namespace rydspec {

// Configuration and input-contract problems. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failures of the numerical machinery (solver breakdown, norm drift). Exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures. Exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rydspec
