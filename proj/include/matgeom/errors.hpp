#pragma once

#include <stdexcept>
#include <string>

namespace matgeom {

/// Raised when an operation is called outside its documented domain
/// (wrong field order, wrong shape, rank condition not met, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands belong to different fields or matrix spaces.
class SpecMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (matrix lines, table files, decomposition documents).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace matgeom
