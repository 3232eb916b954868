#ifndef QCA_ERRORS_H
#define QCA_ERRORS_H

#include <stdexcept>
#include <string>

namespace qca {

/// Malformed input: wrong dimensions, bad rule file, unknown names.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A family parameter violates one of the family's constraints.
struct ParameterError : InputError {
    using InputError::InputError;
};

/// An operation's documented precondition does not hold for the given rule.
struct PreconditionError : InputError {
    using InputError::InputError;
};

/// A configurable size cap (cycle count, lattice size) was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The rule has no deterministic sector, so no infinite configuration is admissible.
struct NoDeterministicSector : std::runtime_error {
    NoDeterministicSector()
        : std::runtime_error("rule has an empty deterministic sector; no infinite configuration is admissible") {
    }
};

}  // namespace qca

#endif
