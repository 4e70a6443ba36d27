#pragma once

#include <stdexcept>
#include <string>

namespace anglerank {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument to an operation (zero polynomial, e = 0, malformed input, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// Input outside the supported range (degree caps, field size caps, ...).
struct Unsupported : Error {
    using Error::Error;
};

// A candidate Weil polynomial failed validation.
struct ValidationError : Error {
    enum class Kind { FunctionalEquation, RootLocation, Other };
    Kind kind;
    ValidationError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

// Numerical root refinement did not certify at the requested precision.
struct PrecisionFailure : Error {
    using Error::Error;
};

// Point counts that cannot come from a Weil polynomial.
struct InconsistentCounts : Error {
    using Error::Error;
};

// Malformed label / curve spec / report.
struct ParseError : Error {
    using Error::Error;
};

} // namespace anglerank
