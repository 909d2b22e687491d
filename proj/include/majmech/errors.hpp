#pragma once

#include <stdexcept>
#include <string>

namespace majmech {

// Input parity does not match the operation (odd-n rule applied to even n, etc.).
struct ParityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside its admissible range (e.g. supermajority threshold k).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structurally malformed input; message names the offending agent/line/field.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mixture weights that do not sum to one.
struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation called on a state its contract excludes.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// Requested enumeration exceeds the configured budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two routes that must agree disagreed. Never swallowed.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A forward simulation reached a history with no strategy defined.
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Posterior requested at an information set unreachable under the strategy profile.
struct BeliefError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace majmech
