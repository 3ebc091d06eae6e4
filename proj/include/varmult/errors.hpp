#pragma once

#include <stdexcept>
#include <string>

namespace varmult {

/// Malformed or out-of-range argument.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SizeMismatch : public InvalidArgument {
public:
    SizeMismatch(std::size_t expected, std::size_t actual);
};

/// (r, p, s) outside the admissible range of the boundedness theorem.
class HypothesisViolation : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A checked property did not hold.
class InvariantFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file could not be read or parsed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace varmult
