#pragma once

#include <stdexcept>
#include <string>

namespace spinring {

/// Bad argument to a public operation (range, shape, or precondition).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds the desk-scale limits (N > 24, dense oracle > 4096).
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Observable requested on a ground state flagged as possibly degenerate.
class DegenerateStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the regime where an analytic statement applies.
class UnsupportedRegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace spinring
