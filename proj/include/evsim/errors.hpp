#pragma once

#include <stdexcept>
#include <string>

namespace evsim {

// Error taxonomy mirrors the CLI exit codes:
//   usage/config errors -> 1, input/consistency errors -> 2,
//   internal invariant failures -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : InputError {
    using InputError::InputError;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace evsim
