#pragma once

#include <stdexcept>
#include <string>

namespace rci {

/// Malformed user input: bad files, unknown symbols, mismatched alphabets.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An API precondition was violated by the caller.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A proven invariant failed at runtime. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact enumeration would exceed its configured node budget; the caller
/// asked for an exact answer, so we refuse instead of approximating.
class EnumerationLimitError : public InputError {
public:
    using InputError::InputError;
};

} // namespace rci
