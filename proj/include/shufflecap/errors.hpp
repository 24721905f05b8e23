#pragma once

#include <stdexcept>
#include <string>

namespace shufflecap {

// Three failure families, mapped by the CLI to exit codes:
// bad input -> 2, exhausted budget -> still exit 0 (recorded as UNDECIDED
// where a verdict is expected), broken internal invariant -> 3.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : InputError {
    using InputError::InputError;
};
struct ValidationFailed : InputError {
    using InputError::InputError;
};
struct UndeliverableMessage : InputError {
    using InputError::InputError;
};
struct DivisibilityError : InputError {
    using InputError::InputError;
};
struct NonuniformCapacity : InputError {
    using InputError::InputError;
};
struct MissingCoordinate : InputError {
    using InputError::InputError;
};
struct UnknownVertex : InputError {
    using InputError::InputError;
};
struct IncompleteChoice : InputError {
    using InputError::InputError;
};
struct UnboundedPolytope : InputError {
    using InputError::InputError;
};

struct BudgetExceeded : BudgetError {
    using BudgetError::BudgetError;
};
struct BlowupBudgetExceeded : BudgetError {
    using BudgetError::BudgetError;
};
struct DimensionCapExceeded : BudgetError {
    using BudgetError::BudgetError;
};

struct InvariantViolation : InternalError {
    using InternalError::InternalError;
};

} // namespace shufflecap
