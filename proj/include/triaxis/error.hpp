#pragma once

#include <stdexcept>
#include <string>

namespace triaxis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range parameters, dimension mismatches, malformed files.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not deliver its contract (non-convergence,
/// broken operator, undefined frame).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The mean spin vanishes, so the perpendicular frame used by the squeezing
/// parameter is undefined.
class FrameUndefined : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace triaxis
