#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sweepchi {

enum class ErrorKind {
    DegenerateChart,
    SingularCurvePoint,
    NonTransverseSection,
    ProjectionUndefined,
    OnBoundary,
    ParseError,
    ValidationError,
    DegenerateTangency,
    DegenerateBoundaryTangency,
    InteriorCriticalOnBoundary,
    GenericityExhausted,
    NonIntegralResult,
    PoleOnBoundary,
    DegenerateMeridianTangency,
    ResolutionTooCoarse,
    InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind)
    {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Kinds that mean "this sweep direction is not generic"; the genericity
/// guard retries on these and nothing else.
[[nodiscard]] bool is_genericity_failure(ErrorKind kind) noexcept;

} // namespace sweepchi
