#pragma once

#include <stdexcept>
#include <string>

namespace varmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatches, invalid points, bad weights.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A geometric hypothesis does not hold for the input
/// (antipodal pairs, clouds outside the small-ball regime, curvature domain).
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// A numerical solver failed to terminate or produced an uncertified answer.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Scenario or CLI input that could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace varmax
