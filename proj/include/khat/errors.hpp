#pragma once

#include <stdexcept>

namespace khat {

/// Malformed input: bad rational strings, non-prime entries, inconsistent
/// dimensions. The CLI maps this family to exit code 2.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : ValidationError {
  using ValidationError::ValidationError;
};

/// A documented precondition of an operation does not hold for its inputs.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// An internal invariant failed. Always a bug.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace khat
