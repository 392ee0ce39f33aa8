#pragma once

#include <stdexcept>
#include <string>

namespace semilab {

// Error taxonomy shared by all modules. Each condition gets its own type so
// call sites can catch exactly what they can handle.

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteEntry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConstraintEliminationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LambdaInSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FeedbackSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeTime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadExponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MuBelowGrowthBound : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace semilab
