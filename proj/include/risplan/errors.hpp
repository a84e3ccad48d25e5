#pragma once

#include <stdexcept>
#include <string>

namespace risplan {

// Base for all library errors. Validation errors (bad user input) derive
// from ValidationError so the CLI can map them to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct InvalidGrid : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidCell : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidDevice : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidReflector : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidReflectorPair : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidBudget : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidConfiguration : ValidationError {
    using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

struct InstanceTooLarge : Error {
    using Error::Error;
};
struct DegenerateGeometry : Error {
    using Error::Error;
};
struct ZeroThroughput : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct GenerationFailed : Error {
    using Error::Error;
};

} // namespace risplan
