// Error taxonomy shared across the library. The CLI maps these onto exit
// codes (config 2, numerical validity 3, I/O 4).
#pragma once

#include <stdexcept>
#include <string>

namespace twprobe {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical-validity failures: trace drift, truncation leakage, invariant
// violations detected at runtime.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by steady_state when the Liouvillian null space has dimension > 1
// (e.g. pure dephasing, where every diagonal state is stationary).
struct NonUniqueSteadyState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace twprobe
