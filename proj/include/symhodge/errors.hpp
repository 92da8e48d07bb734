#pragma once

#include <stdexcept>
#include <string>

namespace symhodge {

// Mismatched half-dimension n between operands, or n outside the supported cap.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operation that requires a homogeneous form received a mixed-grade one.
struct grading_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A form that must be symplectic (nondegenerate antisymmetric) is not.
struct degenerate_form_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed fields, non-positive forms, wrong counts.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside a family's validity interval, or a log of a non-positive value.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Internal numerical guard tripped: inconsistent solve, membership failure,
// ambiguous numerical rank.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (omega, J) pair failed the compatibility check where one is required.
struct compatibility_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace symhodge
