#pragma once

#include <stdexcept>
#include <string>

namespace graphval {

/// File missing or unreadable/unwritable. CLI maps this to exit code 1.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input or violated precondition. CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Out-of-order or otherwise illegal protocol message.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace graphval
