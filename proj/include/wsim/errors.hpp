#pragma once

#include <stdexcept>
#include <string>

namespace wsim {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid domain parameters (normalization, ordering, non-finite values).
struct ParameterError : Error {
    using Error::Error;
};

// Qubit label misuse: duplicates, unknown labels, overlapping registers.
struct LabelError : Error {
    using Error::Error;
};

// Dimension mismatches between operators, states, and targets.
struct ShapeError : Error {
    using Error::Error;
};

// Inconsistent outcome paths or states that no protocol step can produce.
struct ProtocolError : Error {
    using Error::Error;
};

// Bad command line or config file input.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace wsim
