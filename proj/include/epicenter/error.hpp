#pragma once

#include <stdexcept>

namespace epi {

// Error categories map onto the CLI exit-code contract:
// input 2, output 3, degenerate statistics 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct OutputError : Error {
    using Error::Error;
};

// A rank test was requested on a statistic whose null replicates all
// coincide (e.g. resampling without replacement with n = N).
struct DegenerateError : Error {
    using Error::Error;
};

struct ConfigError : InputError {
    using InputError::InputError;
};

}  // namespace epi
